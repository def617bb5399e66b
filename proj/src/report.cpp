#include "tagnet/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tagnet::report {

namespace {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(sig6(x));
}

template <typename T, typename F>
Json opt(const std::optional<T>& v, F&& f) {
  return v ? Json(f(*v)) : Json(nullptr);
}

const char* mode_name(metrics::PathLengthOptions::Mode m) {
  return m == metrics::PathLengthOptions::Mode::exact ? "exact" : "sampled";
}

Json fit_json(const metrics::PowerLawFit& f) {
  Json j;
  j["gamma"] = num(f.gamma);
  j["r"] = num(f.r);
  j["k_min"] = f.k_min;
  j["points_used"] = f.points_used;
  j["flat"] = f.flat;
  return j;
}

std::string str_or(const Json& j, const char* fallback = "n/a") {
  if (j.is_null()) return fallback;
  if (j.is_number_float()) return sig6(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

const Json& at(const Json& j, const char* key) {
  static const Json null_json;
  if (!j.is_object()) return null_json;
  auto it = j.find(key);
  return it == j.end() ? null_json : *it;
}

}  // namespace

std::string sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Json summary_json(const diagnostics::NetworkSummary& s) {
  const auto& st = s.stats;
  Json j;
  j["n"] = st.n;
  j["m"] = st.m;
  j["avg_degree"] = opt(st.avg_degree, num);
  j["clustering"] = st.clustering ? num(st.clustering->average) : Json(nullptr);
  if (st.path_length) {
    const auto& p = *st.path_length;
    Json pl;
    pl["value"] = num(p.value);
    pl["mode"] = mode_name(p.mode);
    pl["pairs"] = p.pairs;
    pl["scope"] = p.largest_component_only ? "largest_component" : "all_components";
    pl["sources"] = p.sources;
    if (p.mode == metrics::PathLengthOptions::Mode::sampled) {
      pl["seed"] = p.seed;
      pl["standard_error"] = opt(p.standard_error, num);
    }
    pl["diameter"] = p.diameter;
    j["path_length"] = pl;
  } else {
    j["path_length"] = nullptr;
  }
  if (s.baseline) {
    j["baseline"] = {{"l_random", num(s.baseline->l_random)}, {"c_random", num(s.baseline->c_random)}};
  } else {
    j["baseline"] = nullptr;
  }
  j["fit"] = opt(s.fit, fit_json);

  Json verdict;
  verdict["small_world"] = s.small_world ? Json(s.small_world->small_world) : Json(nullptr);
  verdict["scale_free"] = s.scale_free ? Json(s.scale_free->scale_free) : Json(nullptr);
  Json ratios;
  ratios["l_ratio"] = s.small_world ? num(s.small_world->l_ratio) : Json(nullptr);
  ratios["c_ratio"] = s.small_world ? num(s.small_world->c_ratio) : Json(nullptr);
  ratios["gamma"] = s.scale_free ? num(s.scale_free->gamma) : Json(nullptr);
  ratios["abs_r"] = s.scale_free ? num(s.scale_free->abs_r) : Json(nullptr);
  verdict["ratios"] = ratios;
  verdict["thresholds"] = {{"max_l_ratio", num(s.options.small_world.max_l_ratio)},
                           {"min_c_ratio", num(s.options.small_world.min_c_ratio)},
                           {"min_abs_r", num(s.options.scale_free.min_abs_r)}};
  j["verdict"] = verdict;

  Json top = Json::array();
  for (const auto& t : s.top_tags) top.push_back(Json::array({t.degree, t.tag}));
  j["top_tags"] = top;
  j["isolated_nodes"] = st.isolated_nodes;

  j["components"] = {{"count", st.components}, {"largest", st.largest_component}};
  if (st.clustering) {
    j["clustering_detail"] = {
        {"low_degree_policy",
         st.clustering->policy == metrics::LowDegreePolicy::exclude ? "exclude" : "count_as_zero"},
        {"defined_nodes", st.clustering->defined_nodes},
        {"undefined_nodes", st.clustering->undefined_nodes}};
  } else {
    j["clustering_detail"] = nullptr;
  }
  j["ccdf_fit"] = opt(s.ccdf_fit, fit_json);
  j["warnings"] = s.warnings;
  return j;
}

std::string summary_text(const diagnostics::NetworkSummary& summary) {
  return summary_json(summary).dump(2) + "\n";
}

void write_degree_tsv(std::ostream& out, const metrics::DegreeDistribution& dist) {
  out << "k\tcount\tP(k)\tCCDF(k)\n";
  for (const auto& b : dist.bins) {
    out << b.degree << '\t' << b.count << '\t' << sig6(b.probability) << '\t' << sig6(b.ccdf) << '\n';
  }
}

void write_ccdf_tsv(std::ostream& out, const metrics::DegreeDistribution& dist) {
  out << "k\tCCDF(k)\n";
  for (const auto& b : dist.bins) out << b.degree << '\t' << sig6(b.ccdf) << '\n';
}

std::string plot_script(const diagnostics::NetworkSummary& s, const std::string& degree_file,
                        const std::string& ccdf_file) {
  std::ostringstream g;
  g << "# gnuplot script: degree distribution and CCDF on log-log axes\n"
    << "set terminal pngcairo size 900,650\n"
    << "set logscale xy\n"
    << "set xlabel 'k'\n"
    << "set key top right\n";
  const auto line = [&](const std::optional<metrics::PowerLawFit>& f, double slope_sign_offset) {
    // log10 y = intercept + slope log10 k  =>  y = 10^intercept * k^slope
    const double slope = slope_sign_offset - f->gamma;
    return "10**(" + sig6(f->intercept) + ")*x**(" + sig6(slope) + ")";
  };

  g << "\nset output 'degree_distribution.png'\n"
    << "set ylabel 'P(k)'\n";
  g << "plot '" << degree_file << "' using 1:3 skip 1 with points pt 7 ps 0.6 title 'P(k)'";
  if (s.fit) {
    g << ", \\\n     " << line(s.fit, 0.0) << " with lines lw 2 title 'gamma = " << sig6(s.fit->gamma)
      << ", R = " << sig6(s.fit->r) << "'";
  }
  g << "\n\nset output 'degree_ccdf.png'\n"
    << "set ylabel 'P(K >= k)'\n";
  g << "plot '" << ccdf_file << "' using 1:2 skip 1 with points pt 7 ps 0.6 title 'CCDF'";
  if (s.ccdf_fit) {
    g << ", \\\n     " << line(s.ccdf_fit, 1.0) << " with lines lw 2 title 'slope = "
      << sig6(1.0 - s.ccdf_fit->gamma) << ", R = " << sig6(s.ccdf_fit->r) << "'";
  }
  g << "\n";
  return g.str();
}

std::string text_report(const Json& j) {
  std::ostringstream o;
  o << "Nodes (tags) N:            " << str_or(at(j, "n")) << "\n"
    << "Edges M:                   " << str_or(at(j, "m")) << "\n"
    << "Average degree <k>:        " << str_or(at(j, "avg_degree")) << "\n"
    << "Clustering coefficient C:  " << str_or(at(j, "clustering")) << "\n"
    << "Average path length l:     " << str_or(at(at(j, "path_length"), "value"));
  if (const auto& mode = at(at(j, "path_length"), "mode"); !mode.is_null()) o << " (" << str_or(mode) << ")";
  o << "\n"
    << "Isolated nodes:            " << str_or(at(j, "isolated_nodes")) << "\n\n";

  const auto& base = at(j, "baseline");
  o << "Random-graph baseline:     l_random = " << str_or(at(base, "l_random"))
    << ", C_random = " << str_or(at(base, "c_random")) << "\n";
  const auto& fit = at(j, "fit");
  o << "Power-law fit P(k):        gamma = " << str_or(at(fit, "gamma")) << ", R = " << str_or(at(fit, "r"))
    << ", k_min = " << str_or(at(fit, "k_min")) << "\n";
  const auto& cfit = at(j, "ccdf_fit");
  if (!cfit.is_null()) {
    o << "Power-law fit CCDF:        gamma = " << str_or(at(cfit, "gamma")) << ", R = " << str_or(at(cfit, "r"))
      << "\n";
  }

  const auto& v = at(j, "verdict");
  const auto& r = at(v, "ratios");
  const auto& th = at(v, "thresholds");
  const auto yes_no = [](const Json& b) -> std::string {
    return b.is_boolean() ? (b.get<bool>() ? "yes" : "no") : "undetermined";
  };
  o << "\nSmall world:  " << yes_no(at(v, "small_world")) << "  (l/l_random = " << str_or(at(r, "l_ratio"))
    << " <= " << str_or(at(th, "max_l_ratio")) << ", C/C_random = " << str_or(at(r, "c_ratio"))
    << " >= " << str_or(at(th, "min_c_ratio")) << ")\n";
  o << "Scale free:   " << yes_no(at(v, "scale_free")) << "  (|R| = " << str_or(at(r, "abs_r"))
    << " >= " << str_or(at(th, "min_abs_r")) << ", gamma = " << str_or(at(r, "gamma")) << ")\n";

  const auto& top = at(j, "top_tags");
  if (top.is_array() && !top.empty()) {
    o << "\nTop " << top.size() << " degree tags\n"
      << "  degree  tag\n";
    for (const auto& row : top) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%8s", str_or(row.at(0)).c_str());
      o << buf << "  " << str_or(row.at(1)) << "\n";
    }
  }
  const auto& warnings = at(j, "warnings");
  if (warnings.is_array()) {
    for (const auto& w : warnings) o << "warning: " << str_or(w) << "\n";
  }
  return o.str();
}

}  // namespace tagnet::report
