#include "flatstrata/io.hpp"

#include <cstdio>
#include <sstream>

#include "flatstrata/error.hpp"
#include "json.hpp"

namespace flatstrata {

using nlohmann::json;

namespace {

json words_json(const CylinderDiagram& d) {
  json cyls = json::array();
  for (const auto& c : d.cylinders()) cyls.push_back({{"top", c.top}, {"bottom", c.bottom}});
  return cyls;
}

json vec_json(const Vec2& v) { return json::array({v.x.str(), v.y.str()}); }

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::BadInput, where + ": expected a \"p/q\" string");
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadInput, std::string("invalid JSON: ") + e.what());
  }
}

CylinderDiagram diagram_of(const json& j) {
  if (!j.is_object() || !j.contains("cylinders") || !j["cylinders"].is_array())
    throw Error(ErrorCode::BadInput, "expected an object with a \"cylinders\" array");
  std::vector<CylinderWords> words;
  try {
    for (const auto& c : j["cylinders"])
      words.push_back({c.at("top").get<std::vector<Label>>(), c.at("bottom").get<std::vector<Label>>()});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("bad cylinder entry: ") + e.what());
  }
  return CylinderDiagram(std::move(words));
}

}  // namespace

std::string diagram_to_json(const CylinderDiagram& d, bool canonical) {
  const CylinderDiagram& out = canonical ? d.canonical() : d;
  json j{{"cylinders", words_json(out)}};
  return j.dump();
}

CylinderDiagram diagram_from_json(std::string_view text) { return diagram_of(parse(text)); }

std::string surface_to_json(const FlatSurface& m) {
  json widths = json::object();
  for (auto& [l, w] : m.metrics().widths) widths[std::to_string(l)] = w.str();
  json heights = json::array(), twists = json::array();
  for (const auto& h : m.metrics().heights) heights.push_back(h.str());
  for (const auto& t : m.metrics().twists) twists.push_back(t.str());
  json j{{"cylinders", words_json(m.diagram())}, {"widths", widths}, {"heights", heights}, {"twists", twists}};
  return j.dump();
}

FlatSurface surface_from_json(std::string_view text) {
  json j = parse(text);
  CylinderDiagram d = diagram_of(j);
  Metrics mt;
  if (j.contains("widths")) {
    if (!j["widths"].is_object()) throw Error(ErrorCode::BadInput, "\"widths\" must be an object");
    for (auto& [key, val] : j["widths"].items()) {
      Label l = 0;
      try {
        std::size_t used = 0;
        l = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw Error(ErrorCode::BadInput, "width key is not a label: " + key);
      }
      mt.widths[l] = rational_at(val, "width " + key);
    }
  }
  for (const char* field : {"heights", "twists"}) {
    if (!j.contains(field)) continue;
    if (!j[field].is_array()) throw Error(ErrorCode::BadInput, std::string(field) + " must be an array");
    auto& dst = std::string(field) == "heights" ? mt.heights : mt.twists;
    for (const auto& v : j[field]) dst.push_back(rational_at(v, field));
    if (dst.size() != d.cylinder_count())
      throw Error(ErrorCode::BadInput, std::string(field) + " needs one entry per cylinder");
  }
  return build(d, std::move(mt));
}

std::string decomposition_to_json(const DirectionalDecomposition& dec) {
  json cyls = json::array();
  for (const auto& c : dec.cylinders) {
    json strips = json::array();
    for (const auto& s : c.strips)
      strips.push_back({{"cylinder", s.cylinder},
                        {"label", s.start.label},
                        {"offset", s.start.offset.str()},
                        {"length", s.length.str()},
                        {"height", s.height.str()}});
    json e{{"core", vec_json(c.core)},
           {"area", c.area.str()},
           {"circumference_squared", c.circumference_squared().str()},
           {"height_squared", c.height_squared().str()},
           {"modulus_squared", (c.height_squared() / c.circumference_squared()).str()},
           {"left", c.left},
           {"right", c.right},
           {"strips", strips}};
    if (auto v = c.circumference()) e["circumference"] = v->str();
    if (auto v = c.height()) e["height"] = v->str();
    cyls.push_back(std::move(e));
  }
  json scs = json::array();
  for (const auto& s : dec.saddle_connections)
    scs.push_back({{"prong", s.prong}, {"holonomy", vec_json(s.holonomy)}, {"crossings", s.segments.size()}});
  json j{{"direction", {dec.direction.p(), dec.direction.q()}},
         {"area", dec.area().str()},
         {"cylinders", cyls},
         {"saddle_connections", scs}};
  return j.dump();
}

std::string involution_to_json(const AffineSymmetry& s) {
  json labels = json::object();
  for (auto& [a, b] : s.labels) labels[std::to_string(a)] = b;
  json fps = json::array();
  for (const auto& f : s.fixed_points) {
    switch (f.kind) {
      case FixedPoint::Kind::Zero: fps.push_back({{"kind", "zero"}, {"zero", f.zero}}); break;
      case FixedPoint::Kind::SaddleMidpoint:
        fps.push_back({{"kind", "saddle_midpoint"}, {"label", f.label}, {"offset", f.position.x.str()}});
        break;
      case FixedPoint::Kind::Interior:
        fps.push_back({{"kind", "interior"}, {"cylinder", f.cylinder}, {"position", vec_json(f.position)}});
        break;
    }
  }
  const Matrix2& g = s.derivative;
  json j{{"derivative", json::array({json::array({g.a.str(), g.b.str()}), json::array({g.c.str(), g.d.str()})})},
         {"labels", labels},
         {"cylinders", s.cylinders},
         {"fixed_points", fps}};
  return j.dump();
}

std::string cut_to_json(const std::vector<CutComponent>& parts) {
  json arr = json::array();
  for (const auto& p : parts) {
    json e{{"kind", to_string(p.kind)},
           {"area", p.area.str()},
           {"genus", p.genus},
           {"boundary_circles", p.boundary_circles},
           {"cylinders", p.cylinders}};
    if (p.torus) {
      e["lattice"] = json::array({vec_json(p.torus->alpha), vec_json(p.torus->beta)});
      e["slit"] = vec_json(p.torus->slit);
      e["degenerate_slit"] = p.torus->degenerate;
    }
    arr.push_back(std::move(e));
  }
  return json{{"components", arr}}.dump();
}

// ---------------------------------------------------------------- SVG

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Layout {
  double scale;
  double margin = 30;
  std::vector<double> row_bottom;  // svg y of each cylinder's bottom edge
  double width = 0, height = 0;

  Layout(const FlatSurface& m, double s) : scale(s) {
    double y = margin;
    double maxc = 0;
    for (std::size_t j = 0; j < m.cylinder_count(); ++j) {
      y += m.height(j).to_double() * scale;
      row_bottom.push_back(y);
      y += 24;
      maxc = std::max(maxc, m.circumference(j).to_double());
    }
    width = maxc * scale + 2 * margin;
    height = y - 24 + margin;
  }
  double x(const Rational& v) const { return margin + v.to_double() * scale; }
  double y(std::size_t j, const Rational& v) const { return row_bottom[j] - v.to_double() * scale; }
};

void draw_surface(std::ostringstream& os, const FlatSurface& m, const Layout& lay) {
  const auto& d = m.diagram();
  for (std::size_t j = 0; j < m.cylinder_count(); ++j) {
    const Rational& c = m.circumference(j);
    const Rational& h = m.height(j);
    os << "<rect x=\"" << num(lay.x(0)) << "\" y=\"" << num(lay.y(j, h)) << "\" width=\"" << num(c.to_double() * lay.scale)
       << "\" height=\"" << num(h.to_double() * lay.scale) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (Label l : d.cylinders()[j].bottom) {
      Rational mid = m.pos_bottom(l) + m.width(l) / Rational(2);
      os << "<circle cx=\"" << num(lay.x(m.pos_bottom(l))) << "\" cy=\"" << num(lay.y(j, 0)) << "\" r=\"2\"/>\n";
      os << "<text x=\"" << num(lay.x(mid)) << "\" y=\"" << num(lay.y(j, 0) + 12)
         << "\" font-size=\"10\" text-anchor=\"middle\">" << l << "</text>\n";
    }
    for (Label l : d.cylinders()[j].top) {
      Rational start = (m.twist(j) + m.pos_top(l)).mod(c);
      Rational mid = (start + m.width(l) / Rational(2)).mod(c);
      os << "<circle cx=\"" << num(lay.x(start)) << "\" cy=\"" << num(lay.y(j, h)) << "\" r=\"2\"/>\n";
      os << "<text x=\"" << num(lay.x(mid)) << "\" y=\"" << num(lay.y(j, h) - 3)
         << "\" font-size=\"10\" text-anchor=\"middle\">" << l << "</text>\n";
    }
  }
}

std::string header(const Layout& lay) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(lay.width) + "\" height=\"" + num(lay.height) +
         "\">\n";
}

}  // namespace

std::string render_surface_svg(const FlatSurface& m, double scale) {
  Layout lay(m, scale);
  std::ostringstream os;
  os << header(lay);
  draw_surface(os, m, lay);
  os << "</svg>\n";
  return os.str();
}

std::string render_decomposition_svg(const FlatSurface& m, const DirectionalDecomposition& dec, double scale) {
  static const char* palette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf"};
  Layout lay(m, scale);
  std::ostringstream os;
  os << header(lay) << "<defs>\n";
  for (std::size_t j = 0; j < m.cylinder_count(); ++j)
    os << "<clipPath id=\"cyl" << j << "\"><rect x=\"" << num(lay.x(0)) << "\" y=\"" << num(lay.y(j, m.height(j)))
       << "\" width=\"" << num(m.circumference(j).to_double() * scale) << "\" height=\""
       << num(m.height(j).to_double() * scale) << "\"/></clipPath>\n";
  os << "</defs>\n";
  for (std::size_t i = 0; i < dec.cylinders.size(); ++i) {
    const char* colour = palette[i % std::size(palette)];
    for (const auto& s : dec.cylinders[i].strips) {
      const Rational& c = m.circumference(s.cylinder);
      Rational dx = s.slope * s.height;
      os << "<g clip-path=\"url(#cyl" << s.cylinder << ")\">";
      Rational lo = min(s.x0, s.x0 + dx), hi = max(s.x0, s.x0 + dx) + s.length;
      Rational kmax = ((c - lo) / c).floor(), kmin = (-hi / c).floor();
      for (Rational k = kmin; k <= kmax; k += Rational(1)) {
        Rational x = s.x0 + k * c;
        Vec2 pts[4] = {{x, 0}, {x + s.length, 0}, {x + s.length + dx, s.height}, {x + dx, s.height}};
        os << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.4\" points=\"";
        for (const auto& p : pts) os << num(lay.x(p.x)) << "," << num(lay.y(s.cylinder, p.y)) << " ";
        os << "\"/>";
      }
      os << "</g>\n";
    }
  }
  draw_surface(os, m, lay);
  os << "</svg>\n";
  return os.str();
}

std::string render_diagram_svg(const CylinderDiagram& d, double scale) {
  return render_surface_svg(build(d, default_metrics(d)), scale);
}

std::string render_diagrams_svg(const std::vector<CylinderDiagram>& ds, double scale) {
  std::vector<FlatSurface> ms;
  std::vector<Layout> lays;
  double w = 0, h = 0;
  for (const auto& d : ds) {
    ms.push_back(build(d, default_metrics(d)));
    lays.emplace_back(ms.back(), scale);
    w = std::max(w, lays.back().width);
    h += lays.back().height;
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h) << "\">\n";
  double y = 0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    os << "<g transform=\"translate(0," << num(y) << ")\">\n";
    draw_surface(os, ms[i], lays[i]);
    os << "</g>\n";
    y += lays[i].height;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace flatstrata
