#include "kswall/kswall.hpp"
#include "kswall/scenes.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kswall;

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string scene;
  std::string diagram;
  std::string order;
  std::string mode;
  std::string at;
  std::string direction;
  std::string klass;
  std::string out;
  std::string svg;
  std::string disc;
  std::string incoming;
  std::string weights;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

Point parse_point(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError(flag + ": expected \"x,y\", got '" + text + "'");
  try {
    return {parse_rational(parts[0]), parse_rational(parts[1])};
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

BoundaryVector parse_vector(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError(flag + ": expected \"a,b\", got '" + text + "'");
  try {
    return {std::stoll(parts[0]), std::stoll(parts[1])};
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected integers, got '" + text + "'");
  }
}

Truncation override_truncation(const Truncation& base, const Options& o) {
  FiltrationMode mode = base.mode;
  if (!o.mode.empty()) {
    if (o.mode == "energy")
      mode = FiltrationMode::energy;
    else if (o.mode == "degree")
      mode = FiltrationMode::degree;
    else
      throw UsageError("--mode: expected energy or degree, got '" + o.mode + "'");
  }
  if (o.order.empty()) {
    if (mode != base.mode) throw UsageError("--mode: changing the mode needs --order");
    return base;
  }
  try {
    const Rational r = parse_rational(o.order);
    if (mode == FiltrationMode::energy) return Truncation::energy(r);
    if (!is_integer(r)) throw UsageError("--order: degree mode needs an integer");
    return Truncation::degree(r.get_num().get_si());
  } catch (const ParseError& e) {
    throw UsageError(std::string("--order: ") + e.what());
  } catch (const SeriesError& e) {
    throw UsageError(std::string("--order: ") + e.what());
  }
}

Scene load_scene(const Options& o) {
  if (o.scene.empty()) throw UsageError("--scene: required");
  Scene s = scene_from_json(load_json_file(o.scene));
  s.truncation = override_truncation(s.truncation, o);
  return s;
}

Diagram completed_diagram(const Options& o) {
  if (!o.diagram.empty()) {
    Diagram d = diagram_from_json(load_json_file(o.diagram));
    if (!o.order.empty() || !o.mode.empty()) return complete(d, override_truncation(d.completed_to, o));
    return d;
  }
  return complete(load_scene(o));
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

void print_table(const InvariantTable& t, const Point& u) {
  std::cout << "direction " << to_string(t.direction) << " at " << to_string(u) << " (epsilon=" << t.epsilon
            << ", sigma=" << t.sigma << ", order " << t.order << ")\n";
  std::cout << "l\tΩ\tΩ̃\n";
  for (std::size_t l = 1; l <= t.order; ++l) {
    const auto p = t.at(static_cast<std::int64_t>(l));
    std::cout << l << "\t" << p.omega.get_str() << "\t" << p.omega_tilde.get_str() << "\n";
  }
}

int run_scatter(const Options& o) {
  const Diagram d = complete(load_scene(o));
  write_or_print(o.out, dump(diagram_to_json(d)));
  if (!o.svg.empty()) write_text_file(o.svg, render_diagram_svg(d));
  if (!o.out.empty()) std::cout << d.rays.size() << " rays, completed to " << to_string(d.completed_to) << "\n";
  return 0;
}

int run_check(const Options& o) {
  Diagram d;
  if (!o.diagram.empty()) {
    d = diagram_from_json(load_json_file(o.diagram));
    d.completed_to = override_truncation(d.completed_to, o);
  } else {
    d = initial_diagram(load_scene(o));
  }
  const auto report = check_consistency(d);
  std::cout << report.points_checked << " collision points checked\n";
  for (const auto& pd : report.defects) {
    std::cout << "defect at " << to_string(pd.point) << ":";
    for (const auto& t : pd.terms) std::cout << " class " << to_string(t.zvec) << " [" << to_string(t) << "]";
    std::cout << "\n";
  }
  std::cout << (report.consistent() ? "consistent" : "inconsistent") << "\n";
  return report.consistent() ? 0 : 1;
}

int run_invariants(const Options& o) {
  if (o.at.empty()) throw UsageError("--at: required");
  if (o.direction.empty()) throw UsageError("--direction: required");
  const Diagram d = completed_diagram(o);
  const Point u = parse_point(o.at, "--at");
  print_table(invariants_at(d, u, parse_vector(o.direction, "--direction")), u);
  return 0;
}

int run_wallcross(const Options& o) {
  if (o.at.empty()) throw UsageError("--at: required");
  const Diagram d = completed_diagram(o);
  const Point p = parse_point(o.at, "--at");
  std::vector<BoundaryVector> classes;
  if (!o.klass.empty()) {
    classes.push_back(parse_vector(o.klass, "--class"));
  } else {
    // every class carried by a ray starting at p
    std::set<BoundaryVector> seen;
    for (const auto& r : d.rays) {
      if (!(r.origin == p)) continue;
      for (const auto& t : r.slab) seen.insert(t.l * r.direction);
    }
    classes.assign(seen.begin(), seen.end());
    if (classes.empty()) std::cout << "no walls start at " << to_string(p) << "\n";
  }
  for (const auto& g : classes) {
    const auto w = wall_delta(d, p, g);
    std::cout << "class " << to_string(g) << " at " << to_string(p) << ": ΔΩ=" << w.delta.omega.get_str()
              << " ΔΩ̃=" << w.delta.omega_tilde.get_str() << "\n";
  }
  return 0;
}

std::vector<BoundaryVector> incoming_directions(const Options& o) {
  std::vector<BoundaryVector> dirs;
  if (!o.incoming.empty()) {
    for (const auto& part : split(o.incoming, ';')) dirs.push_back(parse_vector(part, "--incoming"));
  } else if (!o.scene.empty()) {
    for (const auto& s : load_scene(o).singularities) dirs.push_back(s.direction);
  } else {
    throw UsageError("--incoming: required unless --scene is given");
  }
  return dirs;
}

std::string weights_to_string(const std::vector<std::vector<std::int64_t>>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) s += ";";
    for (std::size_t j = 0; j < w[i].size(); ++j) s += (j > 0 ? "," : "") + std::to_string(w[i][j]);
  }
  return s + ")";
}

int run_tropical_count(const Options& o) {
  const auto dirs = incoming_directions(o);
  if (!o.weights.empty()) {
    const auto groups = split(o.weights, ';');
    if (groups.size() != dirs.size()) throw UsageError("--weights: need one group per incoming direction");
    std::vector<IncomingWeights> w;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      IncomingWeights in{dirs[i], {}};
      for (const auto& x : split(groups[i], ',')) {
        try {
          in.weights.push_back(std::stoll(x));
        } catch (const std::exception&) {
          throw UsageError("--weights: bad weight '" + x + "'");
        }
      }
      w.push_back(std::move(in));
    }
    std::cout << "N^trop=" << enumerate_Ntrop(w) << "\n";
    return 0;
  }
  if (o.klass.empty()) throw UsageError("--class: required unless --weights is given");
  const auto sum = tropical_wall_crossing(parse_vector(o.klass, "--class"), dirs, multiple_cover_table());
  for (const auto& t : sum.components)
    std::cout << "w=" << weights_to_string(t.weights) << " N^trop=" << t.ntrop << " |Aut|=" << t.aut
              << " term=" << t.value.get_str() << "\n";
  std::cout << "ΔΩ̃" << to_string(sum.target) << "=" << sum.total.get_str() << "\n";
  return 0;
}

int run_render(const Options& o) {
  if (o.svg.empty()) throw UsageError("--svg: required");
  if (!o.disc.empty()) {
    const Scene s = load_scene(o);
    const TropicalDisc disc = disc_from_json(load_json_file(o.disc));
    for (const auto& v : validate(disc, s)) std::cerr << "warning: " << v << "\n";
    write_text_file(o.svg, render_disc_svg(disc, s));
    return 0;
  }
  write_text_file(o.svg, render_diagram_svg(completed_diagram(o)));
  return 0;
}

int run_demo_pentagon() {
  bool ok = true;
  auto expect = [&ok](bool cond, const std::string& what) {
    if (!cond) {
      std::cout << "MISMATCH: " << what << "\n";
      ok = false;
    }
  };
  const Scene scene = pentagon_scene(Truncation::degree(4));
  const Diagram d = complete(scene);
  const std::size_t inserted = d.rays.size() - 2 * scene.singularities.size();
  for (std::size_t i = 2 * scene.singularities.size(); i < d.rays.size(); ++i) {
    const auto& r = d.rays[i];
    std::cout << "new ray from " << to_string(r.origin) << " along " << to_string(r.direction) << ": "
              << slab_at(r, Rational(0), d.completed_to).to_string() << "\n";
  }
  std::cout << inserted << " new ray" << (inserted == 1 ? "" : "s") << "\n";
  expect(inserted == 1, "expected exactly one new ray");

  const Point p{Rational(0), Rational(0)};
  for (std::int64_t a = 0; a <= 4; ++a)
    for (std::int64_t b = 0; a + b <= 4; ++b) {
      if (a == 0 && b == 0) continue;
      const auto w = wall_delta(d, p, {a, b});
      const Rational want = (a == 1 && b == 1) ? Rational(1) : Rational(0);
      expect(w.delta.omega == want, "ΔΩ" + to_string(BoundaryVector{a, b}) + "=" + w.delta.omega.get_str());
    }
  std::cout << "ΔΩ(γ1+γ2)=" << wall_delta(d, p, {1, 1}).delta.omega.get_str() << "\n";
  std::cout << "ΔΩ(γ)=0 for every other class of total weight ≤ 4\n";

  const auto t8 = Truncation::degree(8);
  const Charge g1({1, 0}, Rational(1));
  const Charge g2({0, 1}, Rational(1));
  const QuadraticRefinement sigma;
  const bool pentagon = compose({{g1}, {g2}}, sigma, t8) == compose({{g2}, {g1 + g2}, {g1}}, sigma, t8);
  std::cout << "K(γ1)K(γ2) = K(γ2)K(γ1+γ2)K(γ1) to degree 8: " << (pentagon ? "holds" : "fails") << "\n";
  expect(pentagon, "pentagon identity");
  return ok ? 0 : 1;
}

int run_demo_example65() {
  bool ok = true;
  const Scene scene = pentagon_scene(Truncation::degree(6));
  const Diagram d = complete(scene);

  std::cout << "Ω̃ on an initial ray:";
  const auto init = invariants_at(d, {Rational(-1, 2), Rational(0)}, {1, 0});
  for (std::int64_t l = 1; l <= 6; ++l) {
    const auto v = init.at(l).omega_tilde;
    std::cout << " " << v.get_str();
    ok = ok && v == multiple_cover(l);
  }
  std::cout << "\n";

  const Point p{Rational(0), Rational(0)};
  const std::vector<std::pair<BoundaryVector, Rational>> expected{{{1, 2}, Rational(0)}, {{2, 2}, Rational(-1, 4)}};
  for (const auto& [g, want] : expected) {
    const auto engine = wall_delta(d, p, g).delta.omega_tilde;
    const auto tropical = tropical_wall_crossing(g, {{1, 0}, {0, 1}}, multiple_cover_table());
    std::cout << "ΔΩ̃" << to_string(g) << "=" << engine.get_str() << "  tropical sum:";
    for (const auto& t : tropical.components)
      std::cout << " " << t.value.get_str() << " [w=" << weights_to_string(t.weights) << " N=" << t.ntrop
                << " Aut=" << t.aut << "]";
    std::cout << " = " << tropical.total.get_str() << "\n";
    if (engine != want || tropical.total != want) {
      std::cout << "MISMATCH: expected " << want.get_str() << "\n";
      ok = false;
    }
  }
  std::cout << "table {(1,2):" << wall_delta(d, p, {1, 2}).delta.omega_tilde.get_str()
            << ", (2,2):" << wall_delta(d, p, {2, 2}).delta.omega_tilde.get_str() << "}\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering diagrams, wall-crossing invariants and tropical disc counts"};
  app.require_subcommand(1);
  Options o;

  auto scene_flags = [&o](CLI::App* c) {
    c->add_option("--scene", o.scene, "scene JSON file");
    c->add_option("--order", o.order, "cutoff: energy λ or degree k");
    c->add_option("--mode", o.mode, "energy|degree");
  };

  auto* scatter = app.add_subcommand("scatter", "complete a scene and write the diagram JSON");
  scene_flags(scatter);
  scatter->add_option("--out", o.out, "diagram JSON output (default stdout)");
  scatter->add_option("--svg", o.svg, "also write an SVG figure");

  auto* check = app.add_subcommand("check", "consistency report; exit 1 on defects");
  scene_flags(check);
  check->add_option("--diagram", o.diagram, "diagram JSON (default: the initial diagram of --scene)");

  auto* inv = app.add_subcommand("invariants", "Ω/Ω̃ table at a point along a direction");
  scene_flags(inv);
  inv->add_option("--diagram", o.diagram, "completed diagram JSON");
  inv->add_option("--at", o.at, "query point \"x,y\"");
  inv->add_option("--direction", o.direction, "primitive direction \"a,b\"");

  auto* wall = app.add_subcommand("wallcross", "ΔΩ/ΔΩ̃ at a collision point");
  scene_flags(wall);
  wall->add_option("--diagram", o.diagram, "completed diagram JSON");
  wall->add_option("--at", o.at, "collision point \"x,y\"");
  wall->add_option("--class", o.klass, "class \"a,b\" (default: every class starting there)");

  auto* trop = app.add_subcommand("tropical-count", "N^trop counts and the tropical wall-crossing sum");
  scene_flags(trop);
  trop->add_option("--incoming", o.incoming, "incoming directions \"a,b;c,d\"");
  trop->add_option("--class", o.klass, "target class \"a,b\"");
  trop->add_option("--weights", o.weights, "one weight configuration \"1;1,1\" (prints N^trop only)");

  auto* render = app.add_subcommand("render", "write an SVG of a diagram or disc");
  scene_flags(render);
  render->add_option("--diagram", o.diagram, "diagram JSON");
  render->add_option("--disc", o.disc, "disc JSON drawn over --scene");
  render->add_option("--svg", o.svg, "SVG output");

  auto* demo_p = app.add_subcommand("demo-pentagon", "two I_1 singularities with unit pairing");
  auto* demo_e = app.add_subcommand("demo-example65", "ΔΩ̃ table of the pentagon, engine against tropical sum");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scatter->parsed()) return run_scatter(o);
    if (check->parsed()) return run_check(o);
    if (inv->parsed()) return run_invariants(o);
    if (wall->parsed()) return run_wallcross(o);
    if (trop->parsed()) return run_tropical_count(o);
    if (render->parsed()) return run_render(o);
    if (demo_p->parsed()) return run_demo_pentagon();
    if (demo_e->parsed()) return run_demo_example65();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const GenericityError& e) {
    std::cerr << "genericity error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
