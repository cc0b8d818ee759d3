#include "anisolab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "anisolab/errors.hpp"
#include "json.hpp"

namespace anisolab {
namespace {

using Table = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_scalar(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v{};
  is >> v;
  std::string rest;
  if (!is || (is >> rest)) throw ConfigError("config: cannot parse '" + text + "' for key " + key);
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  std::vector<T> out;
  std::string tok;
  while (is >> tok) {
    for (auto& c : tok)
      if (c == ',') c = ' ';
    std::istringstream ts(tok);
    T v{};
    while (ts >> v) out.push_back(v);
    if (!ts.eof()) throw ConfigError("config: cannot parse list '" + text + "' for key " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config: expected a boolean for key " + key);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

StudyConfig parse_config(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line, section = "study";
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (t.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + key);
    t[key] = trim(line.substr(eq + 1));
  }

  StudyConfig c;
  auto take = [&](const std::string& key, auto&& assign) {
    auto it = t.find(key);
    if (it == t.end()) return;
    assign(key, it->second);
    t.erase(it);
  };
  take("grid.extents", [&](auto& k, auto& v) { c.extents = parse_list<double>(k, v); });
  take("grid.cells", [&](auto& k, auto& v) { c.cells = parse_list<Index>(k, v); });
  take("grid.q", [&](auto& k, auto& v) { c.q = parse_scalar<int>(k, v); });
  take("coefficients.family", [&](auto&, auto& v) { c.coefficient_family = v; });
  take("coefficients.params", [&](auto& k, auto& v) { c.coefficient_params = parse_list<double>(k, v); });
  take("forcing.family", [&](auto&, auto& v) { c.forcing = v; });
  take("forcing.amplitude", [&](auto& k, auto& v) { c.forcing_amplitude = parse_scalar<double>(k, v); });
  take("forcing.modes", [&](auto& k, auto& v) { c.forcing_modes = parse_scalar<int>(k, v); });
  take("sweep.epsilons", [&](auto& k, auto& v) { c.epsilons = parse_list<double>(k, v); });
  take("sweep.margin", [&](auto& k, auto& v) { c.margin = parse_scalar<Index>(k, v); });
  take("sweep.frechet_terms", [&](auto& k, auto& v) { c.frechet_terms = parse_scalar<int>(k, v); });
  take("solver.kind", [&](auto&, auto& v) { c.solver = v; });
  take("solver.tol", [&](auto& k, auto& v) { c.solver_tol = parse_scalar<double>(k, v); });
  take("solver.max_iter", [&](auto& k, auto& v) { c.solver_max_iter = parse_scalar<Index>(k, v); });
  take("solver.threads", [&](auto& k, auto& v) { c.threads = parse_scalar<int>(k, v); });
  take("nonlinearity.name", [&](auto&, auto& v) { c.nonlinearity = v; });
  take("nonlinearity.params", [&](auto& k, auto& v) { c.nonlinearity_params = parse_list<double>(k, v); });
  take("nonlinearity.damping", [&](auto& k, auto& v) { c.damping = parse_scalar<double>(k, v); });
  take("nonlinearity.tol", [&](auto& k, auto& v) { c.picard_tol = parse_scalar<double>(k, v); });
  take("nonlinearity.max_iter", [&](auto& k, auto& v) { c.picard_max_iter = parse_scalar<int>(k, v); });
  take("translation.shifts", [&](auto& k, auto& v) { c.shifts = parse_list<Index>(k, v); });
  take("fourier.lattice", [&](auto& k, auto& v) { c.lattice = parse_list<Index>(k, v); });
  take("fourier.epsilons", [&](auto& k, auto& v) { c.fourier_epsilons = parse_list<double>(k, v); });
  take("fourier.coefficient", [&](auto&, auto& v) { c.fourier_coefficient = v; });
  take("fourier.matrix", [&](auto& k, auto& v) { c.fourier_matrix = parse_list<double>(k, v); });
  take("fourier.lambda", [&](auto& k, auto& v) { c.fourier_lambda = parse_scalar<double>(k, v); });
  take("fourier.trials", [&](auto& k, auto& v) { c.fourier_trials = parse_scalar<int>(k, v); });
  take("output.dir", [&](auto&, auto& v) { c.out_dir = v; });
  take("output.save_fields", [&](auto& k, auto& v) { c.save_fields = parse_bool(k, v); });
  take("study.seed", [&](auto& k, auto& v) { c.seed = parse_scalar<std::uint64_t>(k, v); });
  if (!t.empty()) throw ConfigError("config: unknown key " + t.begin()->first);
  return c;
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const StudyConfig& c) {
  std::ostringstream os;
  os << "[study]\nseed = " << c.seed << "\n\n";
  os << "[grid]\nextents = " << join(c.extents) << "\ncells = " << join(c.cells) << "\nq = " << c.q << "\n\n";
  os << "[coefficients]\nfamily = " << c.coefficient_family << "\n";
  if (!c.coefficient_params.empty()) os << "params = " << join(c.coefficient_params) << "\n";
  os << "\n[forcing]\nfamily = " << c.forcing << "\namplitude = " << num(c.forcing_amplitude)
     << "\nmodes = " << c.forcing_modes << "\n\n";
  os << "[sweep]\nepsilons = " << join(c.epsilons) << "\nmargin = " << c.margin
     << "\nfrechet_terms = " << c.frechet_terms << "\n\n";
  os << "[solver]\nkind = " << c.solver << "\ntol = " << num(c.solver_tol) << "\nmax_iter = " << c.solver_max_iter
     << "\nthreads = " << c.threads << "\n\n";
  os << "[nonlinearity]\nname = " << c.nonlinearity << "\n";
  if (!c.nonlinearity_params.empty()) os << "params = " << join(c.nonlinearity_params) << "\n";
  os << "damping = " << num(c.damping) << "\ntol = " << num(c.picard_tol) << "\nmax_iter = " << c.picard_max_iter
     << "\n\n";
  os << "[translation]\nshifts = " << join(c.shifts) << "\n\n";
  os << "[fourier]\nlattice = " << join(c.lattice) << "\nepsilons = " << join(c.fourier_epsilons)
     << "\ncoefficient = " << c.fourier_coefficient << "\n";
  if (!c.fourier_matrix.empty()) os << "matrix = " << join(c.fourier_matrix) << "\n";
  os << "lambda = " << num(c.fourier_lambda) << "\ntrials = " << c.fourier_trials << "\n\n";
  os << "[output]\ndir = " << c.out_dir << "\nsave_fields = " << (c.save_fields ? "true" : "false") << "\n";
  return os.str();
}

std::string config_to_json(const StudyConfig& c, int indent) {
  nlohmann::json j;
  j["seed"] = c.seed;
  j["grid"] = {{"extents", c.extents}, {"cells", c.cells}, {"q", c.q}};
  j["coefficients"] = {{"family", c.coefficient_family}, {"params", c.coefficient_params}};
  j["forcing"] = {{"family", c.forcing}, {"amplitude", c.forcing_amplitude}, {"modes", c.forcing_modes}};
  j["sweep"] = {{"epsilons", c.epsilons}, {"margin", c.margin}, {"frechet_terms", c.frechet_terms}};
  j["solver"] = {{"kind", c.solver}, {"tol", c.solver_tol}, {"max_iter", c.solver_max_iter}, {"threads", c.threads}};
  j["nonlinearity"] = {{"name", c.nonlinearity},
                       {"params", c.nonlinearity_params},
                       {"damping", c.damping},
                       {"tol", c.picard_tol},
                       {"max_iter", c.picard_max_iter}};
  j["translation"] = {{"shifts", c.shifts}};
  j["fourier"] = {{"lattice", c.lattice},
                  {"epsilons", c.fourier_epsilons},
                  {"coefficient", c.fourier_coefficient},
                  {"matrix", c.fourier_matrix},
                  {"lambda", c.fourier_lambda},
                  {"trials", c.fourier_trials}};
  j["output"] = {{"dir", c.out_dir}, {"save_fields", c.save_fields}};
  return j.dump(indent);
}

StudyConfig config_from_json(const std::string& text) {
  StudyConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    j.at("seed").get_to(c.seed);
    const auto& g = j.at("grid");
    g.at("extents").get_to(c.extents);
    g.at("cells").get_to(c.cells);
    g.at("q").get_to(c.q);
    j.at("coefficients").at("family").get_to(c.coefficient_family);
    j.at("coefficients").at("params").get_to(c.coefficient_params);
    const auto& f = j.at("forcing");
    f.at("family").get_to(c.forcing);
    f.at("amplitude").get_to(c.forcing_amplitude);
    f.at("modes").get_to(c.forcing_modes);
    const auto& s = j.at("sweep");
    s.at("epsilons").get_to(c.epsilons);
    s.at("margin").get_to(c.margin);
    s.at("frechet_terms").get_to(c.frechet_terms);
    const auto& sv = j.at("solver");
    sv.at("kind").get_to(c.solver);
    sv.at("tol").get_to(c.solver_tol);
    sv.at("max_iter").get_to(c.solver_max_iter);
    sv.at("threads").get_to(c.threads);
    const auto& nl = j.at("nonlinearity");
    nl.at("name").get_to(c.nonlinearity);
    nl.at("params").get_to(c.nonlinearity_params);
    nl.at("damping").get_to(c.damping);
    nl.at("tol").get_to(c.picard_tol);
    nl.at("max_iter").get_to(c.picard_max_iter);
    j.at("translation").at("shifts").get_to(c.shifts);
    const auto& fo = j.at("fourier");
    fo.at("lattice").get_to(c.lattice);
    fo.at("epsilons").get_to(c.fourier_epsilons);
    fo.at("coefficient").get_to(c.fourier_coefficient);
    fo.at("matrix").get_to(c.fourier_matrix);
    fo.at("lambda").get_to(c.fourier_lambda);
    fo.at("trials").get_to(c.fourier_trials);
    j.at("output").at("dir").get_to(c.out_dir);
    j.at("output").at("save_fields").get_to(c.save_fields);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config json: ") + e.what());
  }
  return c;
}

void validate(const StudyConfig& c) {
  (void)make_grid(c);
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    const double e = c.epsilons[i];
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("config: epsilon " + num(e) + " outside (0, 1]");
    if (i > 0 && !(e < c.epsilons[i - 1])) throw ConfigError("config: epsilons must be strictly decreasing");
  }
  if (c.margin < 1) throw ConfigError("config: margin must be at least 1");
  if (c.frechet_terms < 1) throw ConfigError("config: frechet_terms must be at least 1");
  (void)make_coefficient_family(c);
  (void)make_nonlinearity(c);
  (void)parse_solver_kind(c.solver);
  static const char* forcings[] = {"one", "sin", "sin_x2", "random_modes"};
  if (std::find(std::begin(forcings), std::end(forcings), c.forcing) == std::end(forcings))
    throw ConfigError("config: unknown forcing '" + c.forcing + "'");
}

Grid make_grid(const StudyConfig& c) {
  return make_grid(std::span<const double>(c.extents), std::span<const Index>(c.cells), c.q);
}

CoefficientFamily make_coefficient_family(const StudyConfig& c) {
  return coefficient_family(c.coefficient_family, static_cast<int>(c.cells.size()), c.coefficient_params);
}

Nonlinearity make_nonlinearity(const StudyConfig& c) { return make_nonlinearity(c.nonlinearity, c.nonlinearity_params); }

SolverOptions make_solver_options(const StudyConfig& c) {
  return {parse_solver_kind(c.solver), c.solver_tol, c.solver_max_iter};
}

PicardOptions make_picard_options(const StudyConfig& c) {
  return {c.damping, c.picard_tol, c.picard_max_iter, make_solver_options(c)};
}

ScalarField make_forcing(const StudyConfig& c, const Grid& grid) {
  using std::numbers::pi;
  const int n = grid.dim();
  const double amp = c.forcing_amplitude;
  auto s = [&](std::span<const double> x, int i, double k) {
    return std::sin(k * pi * (x[i] - grid.lower(i)) / grid.extent(i));
  };
  if (c.forcing == "one") return ScalarField(grid, amp);
  if (c.forcing == "sin") {
    return sample(grid, [&](std::span<const double> x) {
      double v = amp;
      for (int i = 0; i < n; ++i) v *= s(x, i, 1.0);
      return v;
    });
  }
  if (c.forcing == "sin_x2") {
    return sample(grid, [&](std::span<const double> x) {
      double v = amp;
      for (int i = grid.q(); i < n; ++i) v *= s(x, i, 1.0);
      return v;
    });
  }
  if (c.forcing == "random_modes") {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> wave(1, 4);
    std::vector<double> coef(static_cast<std::size_t>(c.forcing_modes));
    std::vector<std::vector<int>> k(coef.size(), std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t m = 0; m < coef.size(); ++m) {
      coef[m] = normal(rng);
      for (auto& kk : k[m]) kk = wave(rng);
    }
    return sample(grid, [&](std::span<const double> x) {
      double v = 0.0;
      for (std::size_t m = 0; m < coef.size(); ++m) {
        double t = coef[m];
        for (int i = 0; i < n; ++i) t *= s(x, i, k[m][static_cast<std::size_t>(i)]);
        v += t;
      }
      return amp * v;
    });
  }
  throw ConfigError("config: unknown forcing '" + c.forcing + "'");
}

}  // namespace anisolab
