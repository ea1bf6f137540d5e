#pragma once

// JSON interchange for scenes, diagrams and discs. Rationals travel as
// strings "p/q"; output key order is fixed so export is byte-stable.

#include "kswall/engine.hpp"
#include "kswall/tropical.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace kswall {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string at(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(where, key) + ": missing");
  return *it;
}

inline Rational read_rational(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(where + ": expected a rational string such as \"3/2\"");
}

inline std::int64_t read_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Point read_point(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [x, y]");
  return {read_rational(j[0], where + "[0]"), read_rational(j[1], where + "[1]")};
}

inline BoundaryVector read_vector(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [a, b]");
  return {read_int(j[0], where + "[0]"), read_int(j[1], where + "[1]")};
}

inline Json write_point(const Point& p) { return Json::array({p.x.get_str(), p.y.get_str()}); }
inline Json write_vector(const BoundaryVector& v) { return Json::array({v.a, v.b}); }

inline Truncation read_mode(const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) throw ParseError(where + ": expected {\"energy\": λ} or {\"degree\": k}");
  try {
    if (j.contains("energy")) return Truncation::energy(read_rational(j["energy"], where + ".energy"));
    if (j.contains("degree")) return Truncation::degree(read_int(j["degree"], where + ".degree"));
  } catch (const SeriesError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown mode");
}

inline Json write_mode(const Truncation& t) {
  Json j = Json::object();
  if (t.mode == FiltrationMode::energy)
    j["energy"] = t.cutoff.get_str();
  else
    j["degree"] = t.cutoff.get_num().get_si();
  return j;
}

inline QuadraticRefinement read_sigma(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected \"default\" or \"trivial\"");
  const auto s = j.get<std::string>();
  if (s == "default") return QuadraticRefinement::standard();
  if (s == "trivial") return QuadraticRefinement::trivial();
  if (s == "default+(1,0)") return QuadraticRefinement::standard(1, 0);
  if (s == "default+(0,1)") return QuadraticRefinement::standard(0, 1);
  if (s == "default+(1,1)") return QuadraticRefinement::standard(1, 1);
  throw ParseError(where + ": unknown sigma '" + s + "'");
}

}  // namespace detail

inline Json scene_to_json(const Scene& s) {
  Json j = Json::object();
  j["mode"] = detail::write_mode(s.truncation);
  j["epsilon"] = s.epsilon;
  j["sigma"] = s.sigma.name();
  Json sings = Json::array();
  for (const auto& g : s.singularities) {
    Json e = Json::object();
    e["pos"] = detail::write_point(g.pos);
    e["direction"] = detail::write_vector(g.direction);
    e["multiplicity"] = g.multiplicity;
    sings.push_back(std::move(e));
  }
  j["singularities"] = std::move(sings);
  if (s.viewport) {
    Json v = Json::object();
    v["lower"] = detail::write_point(s.viewport->lower);
    v["upper"] = detail::write_point(s.viewport->upper);
    j["viewport"] = std::move(v);
  }
  return j;
}

inline Scene scene_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("scene: expected an object");
  Scene s;
  s.truncation = detail::read_mode(detail::field(j, "mode", ""), "mode");
  if (j.contains("epsilon")) s.epsilon = static_cast<int>(detail::read_int(j["epsilon"], "epsilon"));
  if (j.contains("sigma")) s.sigma = detail::read_sigma(j["sigma"], "sigma");
  const Json& sings = detail::field(j, "singularities", "");
  if (!sings.is_array()) throw ParseError("singularities: expected an array");
  for (std::size_t i = 0; i < sings.size(); ++i) {
    const std::string where = "singularities[" + std::to_string(i) + "]";
    Singularity g;
    g.pos = detail::read_point(detail::field(sings[i], "pos", where), where + ".pos");
    g.direction = detail::read_vector(detail::field(sings[i], "direction", where), where + ".direction");
    if (sings[i].contains("multiplicity"))
      g.multiplicity = static_cast<int>(detail::read_int(sings[i]["multiplicity"], where + ".multiplicity"));
    s.singularities.push_back(std::move(g));
  }
  if (j.contains("viewport")) {
    const Json& v = j["viewport"];
    s.viewport = Viewport{detail::read_point(detail::field(v, "lower", "viewport"), "viewport.lower"),
                          detail::read_point(detail::field(v, "upper", "viewport"), "viewport.upper")};
  }
  validate_scene(s);
  return s;
}

inline Json diagram_to_json(const Diagram& d) {
  Json j = Json::object();
  j["scene"] = scene_to_json(d.scene);
  j["completed_to"] = detail::write_mode(d.completed_to);
  Json rays = Json::array();
  for (const auto& r : d.rays) {
    Json e = Json::object();
    e["origin"] = detail::write_point(r.origin);
    e["direction"] = detail::write_vector(r.direction);
    Json slab = Json::array();
    for (const auto& t : r.slab) {
      Json m = Json::object();
      m["coeff"] = t.coeff.get_str();
      m["l"] = t.l;
      m["base"] = t.base.get_str();
      slab.push_back(std::move(m));
    }
    e["slab"] = std::move(slab);
    e["generation"] = r.generation;
    e["parents"] = r.parents;
    if (r.singularity) e["singularity"] = *r.singularity;
    rays.push_back(std::move(e));
  }
  j["rays"] = std::move(rays);
  return j;
}

inline Diagram diagram_from_json(const Json& j) {
  Diagram d;
  d.scene = scene_from_json(detail::field(j, "scene", ""));
  d.completed_to = j.contains("completed_to") ? detail::read_mode(j["completed_to"], "completed_to") : d.scene.truncation;
  const Json& rays = detail::field(j, "rays", "");
  if (!rays.is_array()) throw ParseError("rays: expected an array");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    Ray r;
    r.origin = detail::read_point(detail::field(rays[i], "origin", where), where + ".origin");
    r.direction = detail::read_vector(detail::field(rays[i], "direction", where), where + ".direction");
    if (!is_primitive(r.direction)) throw ParseError(where + ".direction: not primitive");
    const Json& slab = detail::field(rays[i], "slab", where);
    if (!slab.is_array()) throw ParseError(where + ".slab: expected an array");
    for (std::size_t k = 0; k < slab.size(); ++k) {
      const std::string w = where + ".slab[" + std::to_string(k) + "]";
      SlabTerm t;
      t.coeff = detail::read_rational(detail::field(slab[k], "coeff", w), w + ".coeff");
      t.l = detail::read_int(detail::field(slab[k], "l", w), w + ".l");
      t.base = detail::read_rational(detail::field(slab[k], "base", w), w + ".base");
      if (t.l < 1) throw ParseError(w + ".l: must be positive");
      r.slab.push_back(std::move(t));
    }
    if (rays[i].contains("generation")) r.generation = static_cast<int>(detail::read_int(rays[i]["generation"], where + ".generation"));
    if (rays[i].contains("parents")) {
      const Json& p = rays[i]["parents"];
      if (!p.is_array()) throw ParseError(where + ".parents: expected an array");
      for (std::size_t k = 0; k < p.size(); ++k) {
        const auto idx = detail::read_int(p[k], where + ".parents[" + std::to_string(k) + "]");
        if (idx < 0 || static_cast<std::size_t>(idx) >= rays.size())
          throw ParseError(where + ".parents[" + std::to_string(k) + "]: no such ray");
        r.parents.push_back(static_cast<std::size_t>(idx));
      }
    }
    if (rays[i].contains("singularity")) {
      const auto s = detail::read_int(rays[i]["singularity"], where + ".singularity");
      if (s < 0 || static_cast<std::size_t>(s) >= d.scene.singularities.size())
        throw ParseError(where + ".singularity: no such singularity");
      r.singularity = static_cast<std::size_t>(s);
    }
    d.rays.push_back(std::move(r));
  }
  return d;
}

inline Json disc_to_json(const TropicalDisc& disc) {
  Json j = Json::object();
  Json vs = Json::array();
  for (const auto& v : disc.vertices) {
    Json e = Json::object();
    e["id"] = v.id;
    if (v.singularity)
      e["pos"] = "sing:" + std::to_string(*v.singularity);
    else
      e["pos"] = detail::write_point(v.pos.value_or(Point{}));
    vs.push_back(std::move(e));
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : disc.edges) {
    Json x = Json::object();
    x["from"] = e.from;
    x["to"] = e.to;
    x["weight"] = e.weight;
    x["direction"] = detail::write_vector(e.direction);
    es.push_back(std::move(x));
  }
  j["edges"] = std::move(es);
  j["root"] = disc.root;
  return j;
}

inline TropicalDisc disc_from_json(const Json& j) {
  TropicalDisc disc;
  const Json& vs = detail::field(j, "vertices", "");
  if (!vs.is_array()) throw ParseError("vertices: expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    DiscVertex v;
    v.id = static_cast<int>(detail::read_int(detail::field(vs[i], "id", where), where + ".id"));
    const Json& pos = detail::field(vs[i], "pos", where);
    if (pos.is_string()) {
      const auto s = pos.get<std::string>();
      if (s.rfind("sing:", 0) != 0) throw ParseError(where + ".pos: expected [x, y] or \"sing:<k>\"");
      try {
        v.singularity = std::stoul(s.substr(5));
      } catch (const std::exception&) {
        throw ParseError(where + ".pos: bad singularity reference '" + s + "'");
      }
    } else {
      v.pos = detail::read_point(pos, where + ".pos");
    }
    disc.vertices.push_back(std::move(v));
  }
  const Json& es = detail::field(j, "edges", "");
  if (!es.is_array()) throw ParseError("edges: expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    DiscEdge e;
    e.from = static_cast<int>(detail::read_int(detail::field(es[i], "from", where), where + ".from"));
    e.to = static_cast<int>(detail::read_int(detail::field(es[i], "to", where), where + ".to"));
    e.weight = detail::read_int(detail::field(es[i], "weight", where), where + ".weight");
    e.direction = detail::read_vector(detail::field(es[i], "direction", where), where + ".direction");
    disc.edges.push_back(e);
  }
  disc.root = static_cast<int>(detail::read_int(detail::field(j, "root", ""), "root"));
  return disc;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot write");
  out << text;
}

}  // namespace kswall
