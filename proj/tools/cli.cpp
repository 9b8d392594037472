#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "flatstrata/analysis.hpp"
#include "flatstrata/decompose.hpp"
#include "flatstrata/error.hpp"
#include "flatstrata/io.hpp"
#include "flatstrata/verify.hpp"
#include "json.hpp"

namespace flatstrata::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Direction parse_direction(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("direction must be P,Q: " + text);
  try {
    std::size_t a = 0, b = 0;
    long long p = std::stoll(text.substr(0, comma), &a);
    long long q = std::stoll(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument(text);
    if (p == 0 && q == 0) throw UsageError("direction must be nonzero");
    return Direction(p, q);
  } catch (const std::logic_error&) {
    throw UsageError("direction must be P,Q: " + text);
  }
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw UsageError("not a rational: " + text);
  }
}

/// Source of a surface: a JSON file or an embedded fixture.
struct Source {
  std::string in;
  std::string fixture;

  void add(CLI::App* sub) {
    sub->add_option("--in", in, "surface or diagram JSON file");
    sub->add_option("--fixture", fixture, "embedded fixture id");
  }
  void check() const {
    if (in.empty() == fixture.empty()) throw UsageError("give exactly one of --in and --fixture");
  }
  bool has_widths() const {
    if (in.empty()) return true;
    auto j = nlohmann::json::parse(read_file(in), nullptr, false);
    return j.is_object() && j.contains("widths");
  }
  CylinderDiagram diagram() const {
    check();
    return fixture.empty() ? diagram_from_json(read_file(in)) : load_fixture(fixture).diagram;
  }
  FlatSurface surface() const {
    check();
    if (!fixture.empty()) return build_scenario(fixture);
    std::string text = read_file(in);
    if (!has_widths()) {
      auto d = diagram_from_json(text);
      return build(d, default_metrics(d));
    }
    return surface_from_json(text);
  }
};

ojson parsed(const std::string& text) { return ojson::parse(text); }

std::string dump(const ojson& j) { return j.dump() + "\n"; }

ojson diagram_entry(const CylinderDiagram& d) {
  ojson e = parsed(diagram_to_json(d));
  try {
    e["component"] = to_string(component(d));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::UnsupportedStratum) throw;
  }
  return e;
}

std::size_t reflection_orbit_size(const CylinderDiagram& d) {
  std::set<std::vector<int>> keys;
  for (auto g : {SymmetryElement::Identity, SymmetryElement::ReflectX, SymmetryElement::ReflectY,
                 SymmetryElement::ReflectXY})
    keys.insert(d.apply(g).canonical_key());
  return keys.size();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on translation surfaces in low strata", "flatstrata"};
  app.require_subcommand(1);

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list cylinder diagrams of a stratum");
  std::string stratum;
  int min_cyls = 0, max_cyls = 0;
  std::string comp;
  bool up_to_symmetry = false, svg = false;
  en->add_option("--stratum", stratum, "H4, H(1,1), ...")->required();
  en->add_option("--min-cyls", min_cyls, "minimum number of cylinders");
  en->add_option("--max-cyls", max_cyls, "maximum number of cylinders");
  en->add_option("--component", comp, "odd, even or hyperelliptic")
      ->check(CLI::IsMember({"odd", "even", "hyperelliptic"}));
  en->add_flag("--up-to-symmetry", up_to_symmetry, "one diagram per reflection orbit");
  en->add_flag("--svg", svg, "render instead of JSON");

  // classify
  auto* cl = app.add_subcommand("classify", "stratum, component and canonical form of a diagram");
  Source cl_src;
  cl_src.add(cl);

  // build
  auto* bu = app.add_subcommand("build", "surface from a diagram or fixture");
  Source bu_src;
  bool random = false;
  std::uint64_t seed = 0;
  bu_src.add(bu);
  bu->add_flag("--random", random, "random metrics on the diagram");
  bu->add_option("--seed", seed, "seed for --random");
  bu->add_flag("--svg", svg, "render instead of JSON");

  // decompose
  auto* de = app.add_subcommand("decompose", "cylinders and saddle connections in a direction");
  Source de_src;
  std::string dir_text = "0,1", format = "json";
  de_src.add(de);
  de->add_option("--dir", dir_text, "direction P,Q");
  de->add_option("--format", format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
  de->add_flag("--svg", svg, "same as --format svg");

  // shear
  auto* sh = app.add_subcommand("shear", "shear or stretch a class of parallel cylinders");
  Source sh_src;
  std::vector<std::size_t> cyls;
  std::string t_text, stretch_text, sh_dir = "1,0";
  sh_src.add(sh);
  sh->add_option("--cyls", cyls, "cylinder indices in that direction (default all)")->delimiter(',');
  sh->add_option("--t", t_text, "shear parameter");
  sh->add_option("--stretch", stretch_text, "stretch factor");
  sh->add_option("--dir", sh_dir, "direction P,Q of the cylinders");
  sh->add_flag("--svg", svg, "render instead of JSON");

  // prym
  auto* pr = app.add_subcommand("prym", "look for a -I involution with four fixed points");
  Source pr_src;
  bool details = false;
  pr_src.add(pr);
  pr->add_flag("--details", details, "list every involution");

  // cut
  auto* cu = app.add_subcommand("cut", "cut along homologous saddle connections");
  Source cu_src;
  std::string cut_dir = "0,1";
  std::vector<Label> prongs;
  cu_src.add(cu);
  cu->add_option("--dir", cut_dir, "direction P,Q");
  cu->add_option("--prongs", prongs, "prongs of the saddle connections")->delimiter(',')->required();

  // proportion
  auto* po = app.add_subcommand("proportion", "area proportion of a cylinder in a union of cylinders");
  Source po_src;
  std::string x_dir = "0,1", e_dir = "1,0";
  std::size_t x_index = 0;
  std::vector<std::size_t> e_indices;
  po_src.add(po);
  po->add_option("--dir", x_dir, "direction of X");
  po->add_option("--x", x_index, "index of X")->required();
  po->add_option("--e-dir", e_dir, "direction of the cylinders in E");
  po->add_option("--e", e_indices, "indices of E")->delimiter(',')->required();

  // verify
  auto* ve = app.add_subcommand("verify", "replay the computational claims");
  std::string target, only, report;
  ve->add_option("target", target, "paper")->required()->check(CLI::IsMember({"paper"}));
  ve->add_option("--only", only, "claim id prefix");
  ve->add_option("--report", report, "write the JSON bundle here");

  // render
  auto* re = app.add_subcommand("render", "SVG of a surface, optionally with a decomposition");
  Source re_src;
  std::string re_dir;
  re_src.add(re);
  re->add_option("--dir", re_dir, "overlay the decomposition in P,Q");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << dump({{"error", "Usage"}, {"message", e.what()}});
    return kUsage;
  }

  try {
    if (en->parsed()) {
      auto profile = SingularityProfile::parse(stratum);
      EnumerationOptions opt;
      int hi = max_cyls > 0 ? max_cyls : profile.max_cylinders();
      for (int k = std::max(min_cyls, 1); k <= hi; ++k) opt.cylinder_counts.push_back(k);
      auto all = enumerate(profile, opt);
      std::vector<CylinderDiagram> kept;
      for (const auto& d : all)
        if (comp.empty() || to_string(component(d)) == comp) kept.push_back(d);
      std::vector<std::size_t> orbit_sizes;
      if (up_to_symmetry) {
        auto orbits = symmetry_classes(kept);
        kept.clear();
        for (const auto& o : orbits) {
          kept.push_back(o.representative);
          orbit_sizes.push_back(o.members.size());
        }
      }
      if (svg) {
        out << render_diagrams_svg(kept);
        return 0;
      }
      ojson list = ojson::array();
      for (std::size_t i = 0; i < kept.size(); ++i) {
        ojson e = diagram_entry(kept[i]);
        if (up_to_symmetry) e["orbit_size"] = orbit_sizes[i];
        list.push_back(std::move(e));
      }
      out << dump({{"stratum", profile.str()}, {"count", kept.size()}, {"diagrams", list}});
    } else if (cl->parsed()) {
      auto d = cl_src.diagram();
      ojson j{{"stratum", d.profile().str()}, {"genus", d.genus()}, {"cylinders", d.cylinder_count()}};
      ojson e = diagram_entry(d);
      if (e.contains("component")) j["component"] = e["component"];
      j["canonical"] = parsed(diagram_to_json(d, true))["cylinders"];
      j["reflection_orbit_size"] = reflection_orbit_size(d);
      out << dump(j);
    } else if (bu->parsed()) {
      if (bu->count("--seed") && !random) throw UsageError("--seed needs --random");
      FlatSurface m = [&] {
        if (!random) return bu_src.surface();
        auto d = bu_src.diagram();
        return build(d, random_metrics(d, seed));
      }();
      out << (svg ? render_surface_svg(m) : surface_to_json(m) + "\n");
    } else if (de->parsed()) {
      auto m = de_src.surface();
      auto dec = decompose(m, parse_direction(dir_text));
      if (svg || format == "svg")
        out << render_decomposition_svg(m, dec);
      else
        out << decomposition_to_json(dec) << "\n";
    } else if (sh->parsed()) {
      if (t_text.empty() == stretch_text.empty()) throw UsageError("give exactly one of --t and --stretch");
      auto m = sh_src.surface();
      Direction dir = parse_direction(sh_dir);
      std::vector<std::size_t> sel = cyls;
      FlatSurface res = m;
      if (dir.is_horizontal()) {
        if (sel.empty())
          for (std::size_t j = 0; j < m.cylinder_count(); ++j) sel.push_back(j);
        res = t_text.empty() ? stretch_class(m, sel, parse_rational(stretch_text))
                             : shear_class(m, sel, parse_rational(t_text));
      } else {
        if (sel.empty())
          for (std::size_t j = 0; j < decompose(m, dir).cylinders.size(); ++j) sel.push_back(j);
        Matrix2 f = frame_for(dir);
        Matrix2 g = t_text.empty() ? Matrix2::stretch(parse_rational(stretch_text))
                                   : Matrix2::shear(parse_rational(t_text));
        res = deform_class(m, dir, sel, f.inverse() * g * f);
      }
      out << (svg ? render_surface_svg(res) : surface_to_json(res) + "\n");
    } else if (pr->parsed()) {
      auto m = pr_src.surface();
      auto r = is_prym(m);
      ojson j{{"is_prym", r.is_prym},
              {"fixed_points", r.witness ? ojson(r.witness->fixed_points.size()) : ojson(nullptr)}};
      if (details) {
        ojson invs = ojson::array();
        for (const auto& s : minus_id_involutions(m)) invs.push_back(parsed(involution_to_json(s)));
        j["involutions"] = invs;
      }
      out << dump(j);
    } else if (cu->parsed()) {
      auto m = cu_src.surface();
      out << cut_to_json(cut_along(m, parse_direction(cut_dir), prongs)) << "\n";
    } else if (po->parsed()) {
      auto m = po_src.surface();
      auto xs = decompose(m, parse_direction(x_dir)).cylinders;
      auto es = decompose(m, parse_direction(e_dir)).cylinders;
      if (x_index >= xs.size()) throw Error(ErrorCode::BadInput, "--x out of range");
      std::vector<GeometricCylinder> e;
      for (auto i : e_indices) {
        if (i >= es.size()) throw Error(ErrorCode::BadInput, "--e out of range");
        e.push_back(es[i]);
      }
      out << dump({{"proportion", proportion(m, xs[x_index], e).str()}});
    } else if (ve->parsed()) {
      auto reports = paper_report(only);
      if (reports.empty()) throw Error(ErrorCode::BadInput, "no claim matches --only " + only);
      std::string bundle = reports_to_json(reports);
      if (!report.empty()) {
        std::ofstream f(report, std::ios::binary);
        if (!f) throw Error(ErrorCode::BadInput, "cannot write " + report);
        f << bundle << "\n";
      }
      out << bundle << "\n";
      auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.verified(); });
      return static_cast<int>(std::min<long>(failed, kClaimCap));
    } else if (re->parsed()) {
      if (!re_src.fixture.empty() || re_src.has_widths()) {
        auto m = re_src.surface();
        out << (re_dir.empty() ? render_surface_svg(m) : render_decomposition_svg(m, decompose(m, parse_direction(re_dir))));
      } else {
        out << render_diagram_svg(re_src.diagram());
      }
    }
  } catch (const UsageError& e) {
    err << dump({{"error", "Usage"}, {"message", e.what()}});
    return kUsage;
  } catch (const Error& e) {
    err << dump({{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
    return kBadInput;
  } catch (const std::exception& e) {
    err << dump({{"error", "Internal"}, {"message", e.what()}});
    return kInternal;
  }
  return 0;
}

}  // namespace flatstrata::cli
