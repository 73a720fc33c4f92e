#include "funcest/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include "funcest/composite.hpp"
#include "funcest/error.hpp"
#include "funcest/graphical.hpp"
#include "funcest/methods.hpp"
#include "funcest/synth.hpp"

namespace funcest {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto end = pos == std::string_view::npos ? s.size() : pos;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw DomainError("bad number for " + std::string(what) + ": '" + t + "'");
  }
  return v;
}

std::uint64_t to_uint(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    // Accept integral values written in floating notation, e.g. 1e4.
    const double d = to_double(t, what);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
      throw DomainError("bad integer for " + std::string(what) + ": '" + t + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

bool to_bool(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw DomainError("bad boolean for " + std::string(what) + ": '" + t + "'");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double plugin_falpha(const Histogram& h, double alpha) {
  const double n = static_cast<double>(h.n());
  double f = 0.0;
  for (const Bin& b : h.bins()) f += std::pow(static_cast<double>(b.count) / n, alpha);
  return f;
}

DiscreteDistribution base_distribution(const ExperimentSpec& spec, std::size_t s, SeededRng& rng) {
  if (spec.dist == "uniform") return uniform_dist(s);
  if (spec.dist == "zipf") return zipf_dist(s, spec.alpha);
  if (spec.dist == "beta") return beta_random_dist(s, spec.beta_a, spec.beta_b, rng);
  throw DomainError("unknown distribution '" + spec.dist + "'");
}

struct GridPoint {
  std::size_t s;
  std::size_t n;
};

std::vector<GridPoint> grid_of(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  for (std::size_t s : spec.s_grid) {
    if (spec.n_grid.empty()) {
      grid.push_back({s, spec.n_rule.resolve(s, spec.depth)});
    } else {
      for (std::size_t n : spec.n_grid) grid.push_back({s, n});
    }
  }
  return grid;
}

// One estimator applied to one trial's data: returns the signed error.
using TrialFn = std::function<double(std::size_t est)>;

struct Outcome {
  double error = 0.0;
  double seconds = 0.0;
  bool failed = false;
};

// Builds the trial's data and returns a closure evaluating estimator `est`.
TrialFn prepare_trial(const ExperimentSpec& spec, const std::vector<EntropyFn>& fns, GridPoint g,
                      SeededRng& rng) {
  switch (spec.kind) {
    case ExperimentKind::EntropySweep: {
      const auto p = base_distribution(spec, g.s, rng);
      auto h = std::make_shared<Histogram>(sample_multinomial(p, g.n, rng));
      const double truth = true_entropy(p);
      return [&fns, h, truth](std::size_t e) { return fns[e](*h) - truth; };
    }
    case ExperimentKind::FalphaSweep: {
      const auto p = base_distribution(spec, g.s, rng);
      auto h = std::make_shared<Histogram>(sample_multinomial(p, g.n, rng));
      const double truth = true_falpha(p, spec.order);
      return [&spec, h, truth](std::size_t e) {
        const double est = spec.estimators[e] == "jvhw" ? estimate_falpha(*h, spec.order, spec.jvhw)
                                                         : plugin_falpha(*h, spec.order);
        return est - truth;
      };
    }
    case ExperimentKind::MiSweep: {
      const auto px = beta_random_dist(g.s, 0.6, 0.5, rng);
      const auto pz = beta_random_dist(g.s, 0.6, 0.5, rng);
      const auto xs = sample_categorical(px, g.n, rng);
      const auto zs = sample_categorical(pz, g.n, rng);
      std::vector<Symbol> ys(g.n);
      for (std::size_t i = 0; i < g.n; ++i) ys[i] = (xs[i] + zs[i]) % g.s;
      auto ph = std::make_shared<PairHistogram>(PairHistogram::from_samples(xs, ys));
      const double truth = true_mi(modular_channel_joint(px, pz));
      return [&fns, ph, truth](std::size_t e) { return estimate_mi(*ph, fns[e]) - truth; };
    }
    case ExperimentKind::RateSweep: {
      auto seq = std::make_shared<MarkovSequence>(additive_markov_sequence(g.s, spec.depth, g.n, rng));
      const std::size_t depth = spec.depth;
      return [&fns, seq, depth](std::size_t e) {
        return estimate_entropy_rate(seq->sequence, depth, fns[e]) - seq->true_rate;
      };
    }
    case ExperimentKind::ChowLiuSweep: {
      auto star = std::make_shared<StarTreeData>(
          star_tree_dataset(spec.d, g.s, g.n, rng, spec.beta_a, spec.beta_b));
      return [&fns, star](std::size_t e) {
        return wrong_edges_ratio(chow_liu(star->data, fns[e], 1), star->truth);
      };
    }
  }
  throw DomainError("unknown experiment kind");
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "entropy") return ExperimentKind::EntropySweep;
  if (name == "falpha") return ExperimentKind::FalphaSweep;
  if (name == "mi") return ExperimentKind::MiSweep;
  if (name == "rate") return ExperimentKind::RateSweep;
  if (name == "chowliu") return ExperimentKind::ChowLiuSweep;
  throw DomainError("unknown experiment '" + std::string(name) + "'");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::EntropySweep: return "entropy";
    case ExperimentKind::FalphaSweep: return "falpha";
    case ExperimentKind::MiSweep: return "mi";
    case ExperimentKind::RateSweep: return "rate";
    case ExperimentKind::ChowLiuSweep: return "chowliu";
  }
  return "unknown";
}

SampleRule SampleRule::parse(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw DomainError("n_rule must look like kind:value, got '" + t + "'");
  const std::string kind = t.substr(0, colon);
  SampleRule rule;
  rule.value = to_double(std::string_view(t).substr(colon + 1), "n_rule");
  if (kind == "sparse") {
    rule.kind = Kind::Sparse;
  } else if (kind == "linear") {
    rule.kind = Kind::Linear;
  } else if (kind == "fixed") {
    rule.kind = Kind::Fixed;
  } else if (kind == "rate") {
    rule.kind = Kind::Rate;
  } else {
    throw DomainError("unknown n_rule kind '" + kind + "'");
  }
  if (!(rule.value > 0.0)) throw DomainError("n_rule value must be positive");
  return rule;
}

std::size_t SampleRule::resolve(std::size_t s, std::size_t depth) const {
  const double sd = static_cast<double>(s);
  double n = 0.0;
  switch (kind) {
    case Kind::Sparse:
      if (s < 2) throw DomainError("sparse n_rule needs S >= 2");
      n = std::ceil(value * sd / std::log(sd));
      break;
    case Kind::Linear: n = std::ceil(value * sd); break;
    case Kind::Fixed: n = std::round(value); break;
    case Kind::Rate: {
      if (s < 2) throw DomainError("rate n_rule needs S >= 2");
      const double states = std::pow(sd, static_cast<double>(depth + 1));
      n = std::ceil(value * states / std::log(states));
      break;
    }
  }
  return static_cast<std::size_t>(std::max(n, 2.0));
}

std::string SampleRule::str() const {
  static constexpr const char* names[] = {"sparse", "linear", "fixed", "rate"};
  return std::string(names[static_cast<int>(kind)]) + ":" + fmt(value);
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials == 0) throw DomainError("experiment: trials must be >= 1");
  if (spec.s_grid.empty()) throw DomainError("experiment: S_grid is empty");
  if (spec.estimators.empty()) throw DomainError("experiment: no estimators");
  for (std::size_t s : spec.s_grid) {
    if (s < 1) throw DomainError("experiment: S must be >= 1");
  }
  for (const auto& name : spec.estimators) {
    if (spec.kind == ExperimentKind::FalphaSweep) {
      if (name != "mle" && name != "jvhw") throw DomainError("falpha sweeps take mle or jvhw, got '" + name + "'");
    } else {
      (void)parse_method(name);
    }
  }
  if (spec.kind == ExperimentKind::FalphaSweep && !(spec.order > 0.0)) {
    throw DomainError("experiment: order must be positive");
  }
  if (spec.kind == ExperimentKind::ChowLiuSweep && spec.d < 3) throw DomainError("experiment: d must be >= 3");
  if (spec.kind == ExperimentKind::RateSweep && spec.depth < 1) throw DomainError("experiment: depth must be >= 1");
  funcest::validate(spec.jvhw);
}

std::vector<ResultRow> run(const ExperimentSpec& spec) {
  validate(spec);
  const auto grid = grid_of(spec);
  const std::size_t n_est = spec.estimators.size();

  std::vector<EntropyFn> fns;
  if (spec.kind != ExperimentKind::FalphaSweep) {
    MethodOptions options;
    options.jvhw = spec.jvhw;
    for (const auto& name : spec.estimators) fns.push_back(make_entropy_fn(parse_method(name), options));
  }

  // slots[(g * trials + t) * n_est + e]; each task writes only its own range.
  const std::size_t tasks = grid.size() * spec.trials;
  std::vector<Outcome> slots(tasks * n_est);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t g = task / spec.trials;
      const std::size_t t = task % spec.trials;
      SeededRng rng(spec.seed, (static_cast<std::uint64_t>(g) << 32) | t);
      Outcome* out = &slots[task * n_est];
      TrialFn eval;
      try {
        eval = prepare_trial(spec, fns, grid[g], rng);
      } catch (const std::exception&) {
        for (std::size_t e = 0; e < n_est; ++e) out[e].failed = true;
        continue;
      }
      for (std::size_t e = 0; e < n_est; ++e) {
        const auto start = std::chrono::steady_clock::now();
        try {
          out[e].error = eval(e);
          out[e].failed = !std::isfinite(out[e].error);
        } catch (const std::exception&) {
          out[e].failed = true;
        }
        if (spec.timing) {
          out[e].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
      }
    }
  };

  unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, tasks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  std::vector<ResultRow> rows;
  rows.reserve(grid.size() * n_est);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t e = 0; e < n_est; ++e) {
      ResultRow row;
      row.experiment = spec.id;
      row.s = grid[g].s;
      row.n = grid[g].n;
      row.estimator = spec.estimators[e];
      double mean = 0.0;
      double m2 = 0.0;
      double sq = 0.0;
      double seconds = 0.0;
      std::size_t k = 0;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        const Outcome& o = slots[(g * spec.trials + t) * n_est + e];
        if (o.failed) {
          ++row.failures;
          continue;
        }
        ++k;
        const double d = o.error - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (o.error - mean);
        sq += o.error * o.error;
        seconds += o.seconds;
      }
      row.trials = k;
      if (k == 0) {
        row.rmse = row.bias = row.variance = std::numeric_limits<double>::quiet_NaN();
      } else {
        const double kd = static_cast<double>(k);
        row.bias = mean;
        row.variance = m2 / kd;
        row.rmse = std::sqrt(sq / kd);
        row.runtime_s = seconds / kd;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool any_failures(const std::vector<ResultRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.failures > 0; });
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.s << ',' << r.n << ',' << r.estimator << ',' << r.trials << ','
        << fmt(r.rmse) << ',' << fmt(r.bias) << ',' << fmt(r.variance) << ',' << fmt(r.runtime_s) << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(rows, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      if (t != kCsvHeader) throw DomainError("unexpected CSV header '" + t + "'");
      header = true;
      continue;
    }
    const auto f = split_list(t);
    if (f.size() != 9) throw DomainError("CSV row needs 9 fields: '" + t + "'");
    ResultRow r;
    r.experiment = f[0];
    r.s = to_uint(f[1], "S");
    r.n = to_uint(f[2], "n");
    r.estimator = f[3];
    r.trials = to_uint(f[4], "trials");
    r.rmse = to_double(f[5], "rmse");
    r.bias = to_double(f[6], "bias");
    r.variance = to_double(f[7], "variance");
    r.runtime_s = to_double(f[8], "runtime_s");
    rows.push_back(std::move(r));
  }
  if (!header) throw DomainError("CSV has no header");
  return rows;
}

void emit_plot(const std::vector<ResultRow>& rows, std::ostream& out) {
  constexpr double width = 640.0;
  constexpr double height = 420.0;
  constexpr double left = 70.0;
  constexpr double right = 170.0;
  constexpr double top = 30.0;
  constexpr double bottom = 50.0;
  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#bcbd22"};

  const bool by_s = std::adjacent_find(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
                      return a.s != b.s;
                    }) != rows.end();
  auto x_of = [by_s](const ResultRow& r) { return std::log(static_cast<double>(by_s ? r.s : r.n)); };

  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> order;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = 0.0;
  for (const auto& r : rows) {
    if (!std::isfinite(r.rmse)) continue;
    const std::string key = r.experiment + " " + r.estimator;
    if (!series.contains(key)) order.push_back(key);
    const double x = x_of(r);
    series[key].emplace_back(x, r.rmse);
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y1 = std::max(y1, r.rmse);
  }
  if (order.empty()) {
    x0 = 0.0;
    x1 = 1.0;
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = 1.0;
  y1 *= 1.05;

  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n"
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                left, top + ph, left + pw, top + ph, left, top, left, top + ph);
  out << buf;
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.3g</text>\n"
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n",
                  sx(xv), top + ph + 16.0, xv, left - 6.0, sy(yv) + 4.0, yv);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n",
                left + pw / 2.0, height - 12.0, by_s ? "ln S" : "ln n");
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.2f)\">RMSE</text>\n",
                top + ph / 2.0, top + ph / 2.0);
  out << buf;

  for (std::size_t i = 0; i < order.size(); ++i) {
    auto pts = series[order[i]];
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const char* color = palette[i % std::size(palette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(x), sy(y));
      out << buf;
    }
    out << "\"/>\n";
    for (const auto& [x, y] : pts) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n", sx(x), sy(y), color);
      out << buf;
    }
    std::string label;
    for (char c : order[i]) {
      switch (c) {
        case '&': label += "&amp;"; break;
        case '<': label += "&lt;"; break;
        case '>': label += "&gt;"; break;
        case '"': label += "&quot;"; break;
        default: label += c;
      }
    }
    const double ly = top + 14.0 * static_cast<double>(i);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                  left + pw + 10.0, ly, left + pw + 28.0, ly, color);
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">", left + pw + 32.0, ly + 4.0);
    out << buf << label << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_plot(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_plot(rows, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

ExperimentSpec parse_config(std::istream& in) {
  ExperimentSpec spec;
  spec.s_grid.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string t = trim(std::string_view(line).substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "experiment") {
      spec.kind = parse_experiment_kind(value);
    } else if (key == "id") {
      if (value.find_first_of(",\n") != std::string::npos) throw DomainError("config: id may not contain commas");
      spec.id = value;
    } else if (key == "dist") {
      spec.dist = value;
    } else if (key == "alpha") {
      spec.alpha = to_double(value, key);
    } else if (key == "order") {
      spec.order = to_double(value, key);
    } else if (key == "S_grid") {
      spec.s_grid.clear();
      for (const auto& v : split_list(value)) spec.s_grid.push_back(to_uint(v, key));
    } else if (key == "n_rule") {
      spec.n_rule = SampleRule::parse(value);
    } else if (key == "n_grid") {
      spec.n_grid.clear();
      for (const auto& v : split_list(value)) spec.n_grid.push_back(to_uint(v, key));
    } else if (key == "depth") {
      spec.depth = to_uint(value, key);
    } else if (key == "d") {
      spec.d = static_cast<int>(to_uint(value, key));
    } else if (key == "beta_a") {
      spec.beta_a = to_double(value, key);
    } else if (key == "beta_b") {
      spec.beta_b = to_double(value, key);
    } else if (key == "estimators") {
      spec.estimators = split_list(value);
    } else if (key == "trials") {
      spec.trials = to_uint(value, key);
    } else if (key == "seed") {
      spec.seed = to_uint(value, key);
    } else if (key == "c1") {
      spec.jvhw.c1 = to_double(value, key);
    } else if (key == "c2") {
      spec.jvhw.c2 = to_double(value, key);
    } else if (key == "timing") {
      spec.timing = to_bool(value, key);
    } else if (key == "threads") {
      spec.threads = static_cast<unsigned>(to_uint(value, key));
    } else {
      throw DomainError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate(spec);
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace funcest
