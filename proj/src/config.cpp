#include "mmfs/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mmfs/csv.hpp"
#include "mmfs/error.hpp"

namespace mmfs {

namespace pt = boost::property_tree;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end || t.empty()) throw ConfigError(field, "expected a number, got '" + text + "'");
  if (!std::isfinite(v)) throw ConfigError(field, "value must be finite");
  return v;
}

std::size_t parse_count(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(field, item));
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& field, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_count(field, item));
  return out;
}

bool parse_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(field, "expected true/false, got '" + text + "'");
}

// Section accessor that remembers which keys were consumed so leftovers can
// be reported as unknown.
class Section {
 public:
  Section(const pt::ptree& tree, std::string name) : name_(std::move(name)) {
    if (const auto child = tree.get_child_optional(name_)) tree_ = &*child;
  }

  bool present() const { return tree_ != nullptr; }
  std::string field(const std::string& key) const { return name_ + "." + key; }

  std::optional<std::string> get(const std::string& key) {
    used_.insert(key);
    if (tree_ == nullptr) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string require(const std::string& key) {
    auto v = get(key);
    if (!v) throw ConfigError(field(key), "missing required key");
    return *v;
  }

  void reject_unknown() const {
    if (tree_ == nullptr) return;
    for (const auto& [key, child] : *tree_) {
      if (!used_.contains(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  std::string name_;
  const pt::ptree* tree_ = nullptr;
  std::set<std::string> used_;
};

BoundaryCurve parse_curve(Section& s) {
  const std::string kind = s.get("kind").value_or("circle");
  try {
    if (kind == "circle") return BoundaryCurve::circle(parse_double(s.field("radius"), s.get("radius").value_or("1")));
    if (kind == "ellipse") {
      return BoundaryCurve::ellipse(parse_double(s.field("a"), s.require("a")),
                                    parse_double(s.field("b"), s.require("b")));
    }
    if (kind == "epitrochoid") {
      return BoundaryCurve::epitrochoid(parse_double(s.field("a"), s.require("a")),
                                        parse_double(s.field("b"), s.require("b")));
    }
    if (kind == "custom") return BoundaryCurve::custom(parse_double_list(s.field("samples"), s.require("samples")));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("curve", e.what());
  }
  throw ConfigError(s.field("kind"), "unknown curve kind '" + kind + "' (circle, ellipse, epitrochoid, custom)");
}

std::string curve_kind_text(const BoundaryCurve& c) {
  return std::visit(overloaded{
                        [](const curves::Circle& x) { return "kind = circle\nradius = " + format_double(x.radius) + "\n"; },
                        [](const curves::Ellipse& x) {
                          return "kind = ellipse\na = " + format_double(x.a) + "\nb = " + format_double(x.b) + "\n";
                        },
                        [](const curves::Epitrochoid& x) {
                          return "kind = epitrochoid\na = " + format_double(x.a) + "\nb = " + format_double(x.b) + "\n";
                        },
                        [](const curves::CustomRadial& x) { return "kind = custom\nsamples = " + join(x.samples) + "\n"; },
                    },
                    c.kind());
}

SweepKind parse_sweep_kind(const std::string& field, const std::string& t) {
  if (t == "none") return SweepKind::None;
  if (t == "R0") return SweepKind::R0;
  if (t == "K") return SweepKind::K;
  if (t == "A-vs-SK") return SweepKind::AVersusSK;
  if (t == "optimal-R0-vs-N") return SweepKind::OptimalR0VsN;
  if (t == "sk-convergence") return SweepKind::SkConvergence;
  throw ConfigError(field, "unknown sweep kind '" + t + "' (R0, K, A-vs-SK, optimal-R0-vs-N, sk-convergence)");
}

const char* sweep_kind_text(SweepKind k) {
  switch (k) {
    case SweepKind::None:
      return "none";
    case SweepKind::R0:
      return "R0";
    case SweepKind::K:
      return "K";
    case SweepKind::AVersusSK:
      return "A-vs-SK";
    case SweepKind::OptimalR0VsN:
      return "optimal-R0-vs-N";
    case SweepKind::SkConvergence:
      return "sk-convergence";
  }
  return "none";
}

template <class T>
std::string join_counts(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

double RunConfig::r0_mtm() const { return R0.value_or(rho_min(curve)); }

bool RunConfig::uses_trefftz() const {
  return !method || *method == MethodKind::MTM || *method == MethodKind::MMFS_CBF || *method == MethodKind::MMFS_MBF;
}

bool RunConfig::uses_sources() const { return !method || *method != MethodKind::MTM; }

void RunConfig::validate_for_solve() const {
  if (N < 3) throw ConfigError("method.N", "N must be at least 3");
  if (uses_trefftz()) {
    if (N % 2 == 0) throw ConfigError("method.N", "N must be odd for methods that use S or K, got " + std::to_string(N));
    if (2 * order() + 1 != N) {
      throw ConfigError("method.M", "N = 2M + 1 required, got N = " + std::to_string(N) + ", M = " +
                                        std::to_string(order()));
    }
    if (R0 && !(*R0 > 0.0)) throw ConfigError("method.R0", "must be positive");
    if (R0_mmfs && !(*R0_mmfs > 0.0)) throw ConfigError("method.R0_mmfs", "must be positive");
  }
  if (uses_sources()) {
    if (!(R > 0.0)) throw ConfigError("method.R", "must be positive");
    const double rmin = rho_min(curve);
    if (!(R < rmin)) {
      throw ConfigError("method.R", "source radius " + format_double(R) + " must be below rho_min = " +
                                        format_double(rmin));
    }
  }
  if (radii.empty()) throw ConfigError("evaluation.radii", "need at least one radius");
  for (double r : radii)
    if (!(r > 0.0)) throw ConfigError("evaluation.radii", "radii must be positive");
  if (theta_samples < 360) throw ConfigError("evaluation.theta_samples", "must be at least 360");
  if (points_per_circle < 1) throw ConfigError("evaluation.points_per_circle", "must be at least 1");
}

void RunConfig::validate_for_sweep() const {
  switch (sweep.kind) {
    case SweepKind::None:
      throw ConfigError("sweep.kind", "no sweep configured");
    case SweepKind::R0:
      if (N % 2 == 0 || 2 * order() + 1 != N) throw ConfigError("method.N", "R0 sweep needs odd N = 2M + 1");
      [[fallthrough]];
    case SweepKind::K:
      if (!(sweep.start > 0.0)) throw ConfigError("sweep.start", "must be positive");
      if (!(sweep.step > 0.0)) throw ConfigError("sweep.step", "must be positive");
      if (!(sweep.stop >= sweep.start)) throw ConfigError("sweep.stop", "must not be below start");
      if (sweep.kind == SweepKind::K && N % 2 == 0) throw ConfigError("method.N", "K comparison needs odd N");
      break;
    case SweepKind::AVersusSK:
    case SweepKind::OptimalR0VsN:
      if (sweep.N_list.size() < (sweep.kind == SweepKind::AVersusSK ? 4u : 1u)) {
        throw ConfigError("sweep.N_list", sweep.kind == SweepKind::AVersusSK ? "need at least 4 values" : "empty");
      }
      for (std::size_t n : sweep.N_list) {
        const std::size_t lo = sweep.kind == SweepKind::AVersusSK ? 3 : 5;
        if (n < lo || n % 2 == 0) throw ConfigError("sweep.N_list", "values must be odd and >= " + std::to_string(lo));
      }
      if (sweep.kind == SweepKind::AVersusSK && !(R < rho_min(curve))) {
        throw ConfigError("method.R", "source radius must be below rho_min");
      }
      if (sweep.kind == SweepKind::OptimalR0VsN && (!(sweep.start > 0.0) || !(sweep.step > 0.0))) {
        throw ConfigError("sweep.step", "start and step must be positive");
      }
      break;
    case SweepKind::SkConvergence:
      if (sweep.M_ladder.empty()) throw ConfigError("sweep.M_ladder", "empty");
      if (N < 3) throw ConfigError("method.N", "N must be at least 3");
      if (!(R < rho_min(curve))) throw ConfigError("method.R", "source radius must be below rho_min");
      break;
  }
}

RunConfig parse_config(std::istream& in, const std::string& source_name) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", source_name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  static const std::set<std::string> known{"curve", "method", "data", "evaluation", "sweep", "output"};
  for (const auto& [name, child] : tree) {
    if (!known.contains(name)) {
      throw ConfigError(name, child.empty() ? "key outside of any section" : "unknown section");
    }
  }

  RunConfig cfg;
  Section curve(tree, "curve");
  cfg.curve = parse_curve(curve);
  curve.reject_unknown();

  Section method(tree, "method");
  if (auto v = method.get("name"); v && *v != "all") {
    const auto m = parse_method(*v);
    if (!m) throw ConfigError(method.field("name"), "unknown method '" + *v + "'");
    cfg.method = m;
  }
  if (auto v = method.get("N")) cfg.N = parse_count(method.field("N"), *v);
  if (auto v = method.get("M")) cfg.M = parse_count(method.field("M"), *v);
  if (auto v = method.get("R")) cfg.R = parse_double(method.field("R"), *v);
  if (auto v = method.get("R0")) cfg.R0 = parse_double(method.field("R0"), *v);
  if (auto v = method.get("R0_mmfs")) cfg.R0_mmfs = parse_double(method.field("R0_mmfs"), *v);
  method.reject_unknown();
  if (cfg.N < 1) throw ConfigError(method.field("N"), "must be positive");

  Section data(tree, "data");
  const std::string kind = data.get("kind").value_or("exp-inversion");
  if (kind == "exp-inversion" || kind == "paper-exterior") {
    cfg.data.kind = DataKind::ExpInversion;
  } else if (kind == "constant") {
    cfg.data.kind = DataKind::Constant;
    cfg.data.value = parse_double(data.field("value"), data.require("value"));
  } else if (kind == "fourier") {
    cfg.data.kind = DataKind::Fourier;
    if (auto v = data.get("a0")) cfg.data.a0 = parse_double(data.field("a0"), *v);
    if (auto v = data.get("cos")) cfg.data.cos = parse_double_list(data.field("cos"), *v);
    if (auto v = data.get("sin")) cfg.data.sin = parse_double_list(data.field("sin"), *v);
  } else {
    throw ConfigError(data.field("kind"), "unknown data kind '" + kind + "' (exp-inversion, constant, fourier)");
  }
  if (auto v = data.get("far_field")) cfg.far_field = parse_double(data.field("far_field"), *v);
  data.reject_unknown();

  Section eval(tree, "evaluation");
  if (auto v = eval.get("compare_exact")) cfg.compare_exact = parse_bool(eval.field("compare_exact"), *v);
  if (auto v = eval.get("radii")) cfg.radii = parse_double_list(eval.field("radii"), *v);
  if (auto v = eval.get("theta_samples")) cfg.theta_samples = parse_count(eval.field("theta_samples"), *v);
  if (auto v = eval.get("points_per_circle")) cfg.points_per_circle = parse_count(eval.field("points_per_circle"), *v);
  eval.reject_unknown();

  Section sweep(tree, "sweep");
  if (auto v = sweep.get("kind")) cfg.sweep.kind = parse_sweep_kind(sweep.field("kind"), *v);
  if (auto v = sweep.get("start")) cfg.sweep.start = parse_double(sweep.field("start"), *v);
  if (auto v = sweep.get("stop")) cfg.sweep.stop = parse_double(sweep.field("stop"), *v);
  if (auto v = sweep.get("step")) cfg.sweep.step = parse_double(sweep.field("step"), *v);
  if (auto v = sweep.get("N_list")) cfg.sweep.N_list = parse_count_list(sweep.field("N_list"), *v);
  if (auto v = sweep.get("M_ladder")) cfg.sweep.M_ladder = parse_count_list(sweep.field("M_ladder"), *v);
  sweep.reject_unknown();

  Section output(tree, "output");
  if (auto v = output.get("path")) cfg.output = *v;
  output.reject_unknown();
  return cfg;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "[curve]\n" << curve_kind_text(cfg.curve) << "\n";
  o << "[method]\nname = " << (cfg.method ? std::string(to_string(*cfg.method)) : "all") << "\n";
  o << "N = " << cfg.N << "\n";
  if (cfg.M) o << "M = " << *cfg.M << "\n";
  o << "R = " << format_double(cfg.R) << "\n";
  if (cfg.R0) o << "R0 = " << format_double(*cfg.R0) << "\n";
  if (cfg.R0_mmfs) o << "R0_mmfs = " << format_double(*cfg.R0_mmfs) << "\n";
  o << "\n[data]\n";
  switch (cfg.data.kind) {
    case DataKind::ExpInversion:
      o << "kind = exp-inversion\n";
      break;
    case DataKind::Constant:
      o << "kind = constant\nvalue = " << format_double(cfg.data.value) << "\n";
      break;
    case DataKind::Fourier:
      o << "kind = fourier\na0 = " << format_double(cfg.data.a0) << "\n";
      if (!cfg.data.cos.empty()) o << "cos = " << join(cfg.data.cos) << "\n";
      if (!cfg.data.sin.empty()) o << "sin = " << join(cfg.data.sin) << "\n";
      break;
  }
  o << "far_field = " << format_double(cfg.far_field) << "\n";
  o << "\n[evaluation]\ncompare_exact = " << (cfg.compare_exact ? "true" : "false") << "\n";
  o << "radii = " << join(cfg.radii) << "\n";
  o << "theta_samples = " << cfg.theta_samples << "\n";
  o << "points_per_circle = " << cfg.points_per_circle << "\n";
  o << "\n[sweep]\nkind = " << sweep_kind_text(cfg.sweep.kind) << "\n";
  o << "start = " << format_double(cfg.sweep.start) << "\n";
  o << "stop = " << format_double(cfg.sweep.stop) << "\n";
  o << "step = " << format_double(cfg.sweep.step) << "\n";
  if (!cfg.sweep.N_list.empty()) o << "N_list = " << join_counts(cfg.sweep.N_list) << "\n";
  if (!cfg.sweep.M_ladder.empty()) o << "M_ladder = " << join_counts(cfg.sweep.M_ladder) << "\n";
  if (!cfg.output.empty()) o << "\n[output]\npath = " << cfg.output << "\n";
  return o.str();
}

BoundaryData make_boundary_data(const RunConfig& cfg) {
  switch (cfg.data.kind) {
    case DataKind::ExpInversion: {
      const auto exact = ExactSolution::exp_inversion();
      const auto curve = cfg.curve;
      return BoundaryData([exact, curve](double t) {
        const double r = rho(curve, t);
        return exact.value(r * std::cos(t), r * std::sin(t));
      });
    }
    case DataKind::Constant: {
      const double c = cfg.data.value;
      return BoundaryData([c](double) { return c; });
    }
    case DataKind::Fourier: {
      const auto d = cfg.data;
      return BoundaryData([d](double t) {
        double v = d.a0;
        for (std::size_t k = 0; k < d.cos.size(); ++k) v += d.cos[k] * std::cos(static_cast<double>(k + 1) * t);
        for (std::size_t k = 0; k < d.sin.size(); ++k) v += d.sin[k] * std::sin(static_cast<double>(k + 1) * t);
        return v;
      });
    }
  }
  throw InvalidArgument("unknown data kind");
}

std::optional<ExactSolution> make_exact_solution(const RunConfig& cfg) {
  if (!cfg.compare_exact) return std::nullopt;
  switch (cfg.data.kind) {
    case DataKind::ExpInversion:
      return ExactSolution::exp_inversion();
    case DataKind::Constant:
      return ExactSolution::constant(cfg.data.value);
    case DataKind::Fourier:
      if (const auto* c = std::get_if<curves::Circle>(&cfg.curve.kind())) {
        auto a = cfg.data.cos;
        auto b = cfg.data.sin;
        const std::size_t m = std::max(a.size(), b.size());
        a.resize(m, 0.0);
        b.resize(m, 0.0);
        return ExactSolution::circle_fourier(c->radius, cfg.data.a0, a, b);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace mmfs
