#include "hyperstab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperstab/error.hpp"
#include "json.hpp"

namespace hyperstab {

namespace pt = boost::property_tree;
using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& key, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, source + ": " + key + ": " + what);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  bool has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

  std::string str(const std::string& key, const std::string& fallback) const {
    return tree_.get<std::string>(key, fallback);
  }

  double num(const std::string& key, double fallback) const {
    const auto s = tree_.get_optional<std::string>(key);
    if (!s) return fallback;
    return to_double(key, *s);
  }

  int integer(const std::string& key, int fallback) const {
    const double v = num(key, fallback);
    if (v != static_cast<int>(v)) bad(source_, key, "expected an integer");
    return static_cast<int>(v);
  }

  std::vector<double> vec(const std::string& key) const {
    const json j = parse_json(key);
    if (!j.is_array()) bad(source_, key, "expected a JSON array");
    std::vector<double> out;
    for (const auto& v : j) {
      if (!v.is_number()) bad(source_, key, "array entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  std::vector<std::vector<double>> mat(const std::string& key) const {
    const json j = parse_json(key);
    if (!j.is_array() || j.empty()) bad(source_, key, "expected a nonempty array of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : j) {
      if (!row.is_array()) bad(source_, key, "each row must be an array");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) bad(source_, key, "matrix entries must be numbers");
        r.push_back(v.get<double>());
      }
      if (!out.empty() && r.size() != out.front().size()) bad(source_, key, "ragged matrix");
      out.push_back(std::move(r));
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  double to_double(const std::string& key, const std::string& s) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      bad(source_, key, "expected a number, got '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) bad(source_, key, "expected a number, got '" + s + "'");
    return v;
  }

  json parse_json(const std::string& key) const {
    const auto s = tree_.get_optional<std::string>(key);
    if (!s) bad(source_, key, "missing");
    try {
      return json::parse(*s);
    } catch (const json::parse_error& e) {
      bad(source_, key, std::string("malformed array: ") + e.what());
    }
  }

  const pt::ptree& tree_;
  std::string source_;
};

pt::ptree parse_ini(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::InvalidInput,
                source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

std::string json_vec(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t q = 0; q < v.size(); ++q) s += (q ? ", " : "") + fmt(v[q]);
  return s + "]";
}

std::string json_mat(const std::vector<std::vector<double>>& m) {
  std::string s = "[";
  for (std::size_t q = 0; q < m.size(); ++q) s += (q ? ", " : "") + json_vec(m[q]);
  return s + "]";
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows, const std::string& name) {
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, name + ": empty matrix");
  Matrix m(rows.size(), rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw Error(ErrorKind::InvalidInput, name + ": ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SymMatrix to_sym(const std::vector<std::vector<double>>& rows, const std::string& name) {
  const Matrix m = to_matrix(rows, name);
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, name + ": matrix is not square");
  try {
    return SymMatrix::from_matrix(m, 0.0);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, name + ": " + e.what());
  }
}

const char* boundary_name(CustomBoundary b) {
  return b == CustomBoundary::Zero ? "zero" : "transmissive";
}

CustomBoundary parse_boundary(const std::string& s, const std::string& key, const std::string& src) {
  if (s == "zero") return CustomBoundary::Zero;
  if (s == "transmissive") return CustomBoundary::Transmissive;
  bad(src, key, "expected zero or transmissive, got '" + s + "'");
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SaintVenant: return "saint_venant";
    case ExperimentKind::Diagonal: return "diagonal";
    case ExperimentKind::Custom: return "custom";
  }
  return "?";
}

ExperimentKind parse_experiment(const std::string& s) {
  if (s == "saint_venant") return ExperimentKind::SaintVenant;
  if (s == "diagonal") return ExperimentKind::Diagonal;
  if (s == "custom") return ExperimentKind::Custom;
  throw Error(ErrorKind::InvalidInput,
              "experiment must be saint_venant, diagonal or custom, got '" + s + "'");
}

const char* to_string(SvWeightSet w) {
  switch (w) {
    case SvWeightSet::Exponential: return "exp";
    case SvWeightSet::Linear: return "linear";
    case SvWeightSet::Both: return "both";
    case SvWeightSet::Dia: return "dia";
  }
  return "?";
}

SvWeightSet parse_weight_set(const std::string& s) {
  if (s == "exp") return SvWeightSet::Exponential;
  if (s == "linear") return SvWeightSet::Linear;
  if (s == "both") return SvWeightSet::Both;
  if (s == "dia") return SvWeightSet::Dia;
  throw Error(ErrorKind::InvalidInput, "weight must be exp, linear, both or dia, got '" + s + "'");
}

RunConfig RunConfig::defaults(ExperimentKind kind) {
  RunConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::SaintVenant:
      break;
    case ExperimentKind::Diagonal:
      c.grid = {0.0, 100, 100};
      c.init = {InitKind::Sinusoid, {1.0, 1.0, 1.0}, {1.0, 1.0}};
      break;
    case ExperimentKind::Custom:
      c.grid = {0.0, 50, 50};
      c.t_end = 1.0;
      c.a1 = {{1.0}};
      c.a2 = {{0.0}};
      c.b = {{0.0}};
      c.init = {InitKind::Constant, {1.0}, {1.0, 1.0}};
      break;
  }
  return c;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, field + ": " + what);
  };
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("run.cfl", "must lie in (0, 1]");
  if (!(t_end >= 0.0)) fail("run.t_end", "must be nonnegative");
  if (grid.dx <= 0.0 && (grid.nx < 1 || grid.ny < 1)) fail("run.dx", "give dx > 0 or nx, ny >= 1");
  if (rate && !(*rate > 0.0)) fail("run.rate", "must be positive");
  if (init.values.empty()) fail("init.values", "empty");
  switch (experiment) {
    case ExperimentKind::SaintVenant:
      sv.validate();
      if (gains) gains->validate(sv);
      if (init.values.size() != 3) fail("init.values", "Saint-Venant needs 3 components");
      break;
    case ExperimentKind::Diagonal:
      if (!(c_l > 0.0)) fail("diagonal.c_l", "must be positive");
      if (init.values.size() != 3) fail("init.values", "the diagonal system needs 3 components");
      break;
    case ExperimentKind::Custom: {
      if (!(width > 0.0) || !(height > 0.0)) fail("custom.width", "domain must be nonempty");
      const SystemSpec s = config_system(*this);
      if (init.values.size() != s.n) fail("init.values", "length differs from the system size");
      if (potential) potential->validate();
      break;
    }
  }
  if (grid.dx > 0.0) {
    const double w = experiment == ExperimentKind::SaintVenant ? sv.domain_l
                     : experiment == ExperimentKind::Custom    ? width
                                                               : 1.0;
    const double h = experiment == ExperimentKind::Custom ? height : 1.0;
    try {
      grid.make(w, h);
    } catch (const Error& e) {
      fail("run.dx", e.what());
    }
  }
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  const pt::ptree tree = parse_ini(text, source);
  const Reader r(tree, source);
  const ExperimentKind kind = parse_experiment(r.str("run.experiment", "saint_venant"));
  RunConfig c = RunConfig::defaults(kind);

  if (r.has("run.dx")) {
    c.grid = {r.num("run.dx", 0.0), 0, 0};
  } else if (r.has("run.nx") || r.has("run.ny")) {
    c.grid = {0.0, r.integer("run.nx", 0), r.integer("run.ny", 0)};
  }
  c.cfl = r.num("run.cfl", c.cfl);
  c.t_end = r.num("run.t_end", c.t_end);
  if (r.has("run.rate")) c.rate = r.num("run.rate", 0.0);
  c.weights = parse_weight_set(r.str("run.weight", to_string(c.weights)));
  c.out = r.str("run.out", c.out);

  if (r.has("init.kind")) {
    const std::string k = r.str("init.kind", "");
    if (k == "constant") {
      c.init.kind = InitKind::Constant;
    } else if (k == "sinusoid") {
      c.init.kind = InitKind::Sinusoid;
    } else {
      bad(source, "init.kind", "expected constant or sinusoid, got '" + k + "'");
    }
  }
  if (r.has("init.values")) c.init.values = r.vec("init.values");
  if (r.has("init.frequency")) {
    const auto f = r.vec("init.frequency");
    if (f.size() != 2) bad(source, "init.frequency", "expected two entries");
    c.init.frequency = {f[0], f[1]};
  }

  c.sv.g = r.num("saint_venant.g", c.sv.g);
  c.sv.h_star = r.num("saint_venant.h_star", c.sv.h_star);
  c.sv.w_star = r.num("saint_venant.w_star", c.sv.w_star);
  c.sv.k_drag = r.num("saint_venant.k", c.sv.k_drag);
  c.sv.l_coriolis = r.num("saint_venant.l", c.sv.l_coriolis);
  c.sv.domain_l = r.num("saint_venant.length", c.sv.domain_l);
  if (tree.get_child_optional("gains")) {
    SvControlGains g = SvControlGains::defaults(c.sv);
    g.alpha = r.num("gains.alpha", g.alpha);
    g.beta = r.num("gains.beta", g.beta);
    g.epsilon = r.num("gains.epsilon", g.epsilon);
    g.gamma = r.has("gains.gamma") ? r.num("gains.gamma", 0.0)
                                   : 0.5 * SvControlGains::gamma_max(c.sv, g.epsilon);
    c.gains = g;
  }

  c.c_l = r.num("diagonal.c_l", c.c_l);

  if (r.has("custom.a1")) c.a1 = r.mat("custom.a1");
  if (r.has("custom.a2")) c.a2 = r.mat("custom.a2");
  if (r.has("custom.b")) c.b = r.mat("custom.b");
  c.width = r.num("custom.width", c.width);
  c.height = r.num("custom.height", c.height);
  for (Side s : all_sides) {
    const std::string key = std::string("custom.") + to_string(s);
    if (r.has(key)) c.boundary[static_cast<int>(s)] = parse_boundary(r.str(key, ""), key, source);
  }
  if (tree.get_child_optional("potential")) {
    PotentialSpec p;
    if (r.has("potential.m")) {
      const auto m = r.vec("potential.m");
      if (m.size() != 2) bad(source, "potential.m", "expected two entries");
      p.m = {m[0], m[1]};
    }
    p.c0 = r.num("potential.c0", p.c0);
    p.decay_c = r.num("potential.decay_c", p.decay_c);
    p.chi = r.num("potential.chi", p.chi);
    c.potential = p;
  }

  c.validate();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path), path); }

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  o << "[run]\n";
  o << "experiment = " << to_string(c.experiment) << "\n";
  if (c.grid.dx > 0.0) {
    o << "dx = " << fmt(c.grid.dx) << "\n";
  } else {
    o << "nx = " << c.grid.nx << "\nny = " << c.grid.ny << "\n";
  }
  o << "cfl = " << fmt(c.cfl) << "\n";
  o << "t_end = " << fmt(c.t_end) << "\n";
  if (c.rate) o << "rate = " << fmt(*c.rate) << "\n";
  o << "weight = " << to_string(c.weights) << "\n";
  o << "out = " << c.out << "\n";

  o << "\n[init]\n";
  o << "kind = " << (c.init.kind == InitKind::Constant ? "constant" : "sinusoid") << "\n";
  o << "values = " << json_vec(c.init.values) << "\n";
  o << "frequency = " << json_vec({c.init.frequency[0], c.init.frequency[1]}) << "\n";

  o << "\n[saint_venant]\n";
  o << "g = " << fmt(c.sv.g) << "\nh_star = " << fmt(c.sv.h_star)
    << "\nw_star = " << fmt(c.sv.w_star) << "\nk = " << fmt(c.sv.k_drag)
    << "\nl = " << fmt(c.sv.l_coriolis) << "\nlength = " << fmt(c.sv.domain_l) << "\n";
  if (c.gains) {
    o << "\n[gains]\n";
    o << "alpha = " << fmt(c.gains->alpha) << "\nbeta = " << fmt(c.gains->beta)
      << "\ngamma = " << fmt(c.gains->gamma) << "\nepsilon = " << fmt(c.gains->epsilon) << "\n";
  }

  o << "\n[diagonal]\nc_l = " << fmt(c.c_l) << "\n";

  o << "\n[custom]\n";
  if (!c.a1.empty()) o << "a1 = " << json_mat(c.a1) << "\n";
  if (!c.a2.empty()) o << "a2 = " << json_mat(c.a2) << "\n";
  if (!c.b.empty()) o << "b = " << json_mat(c.b) << "\n";
  o << "width = " << fmt(c.width) << "\nheight = " << fmt(c.height) << "\n";
  for (Side s : all_sides) {
    o << to_string(s) << " = " << boundary_name(c.boundary[static_cast<int>(s)]) << "\n";
  }

  if (c.potential) {
    const PotentialSpec& p = *c.potential;
    o << "\n[potential]\n";
    o << "m = " << json_vec({p.m[0], p.m[1]}) << "\n";
    o << "c0 = " << fmt(p.c0) << "\ndecay_c = " << fmt(p.decay_c) << "\nchi = " << fmt(p.chi)
      << "\n";
  }
  return o.str();
}

SystemSpec config_system(const RunConfig& c) {
  switch (c.experiment) {
    case ExperimentKind::SaintVenant: return saint_venant(c.sv);
    case ExperimentKind::Diagonal: return diagonal_example(c.c_l).to_system();
    case ExperimentKind::Custom: break;
  }
  SystemSpec s;
  s.a1 = to_sym(c.a1, "custom.a1");
  s.a2 = to_sym(c.a2, "custom.a2");
  s.b = to_matrix(c.b, "custom.b");
  s.n = s.a1.n();
  for (std::size_t k = 0; k < s.n; ++k) s.labels.push_back("w" + std::to_string(k + 1));
  s.validate();
  return s;
}

ExperimentSetup make_setup(const RunConfig& c) {
  c.validate();
  switch (c.experiment) {
    case ExperimentKind::SaintVenant: {
      SvExperiment e;
      e.params = c.sv;
      e.gains = c.gains;
      e.grid = c.grid;
      e.cfl = c.cfl;
      e.t_end = c.t_end;
      e.init = c.init;
      e.rate = c.rate.value_or(1.4);
      e.weights = c.weights;
      return sv_setup(e);
    }
    case ExperimentKind::Diagonal: {
      DiagExperiment e;
      e.c_l = c.c_l;
      e.grid = c.grid;
      e.cfl = c.cfl;
      e.t_end = c.t_end;
      e.init = c.init;
      e.rate = c.rate;
      return diag_setup(e);
    }
    case ExperimentKind::Custom: {
      CustomExperiment e;
      e.system = config_system(c);
      e.width = c.width;
      e.height = c.height;
      e.grid = c.grid;
      e.cfl = c.cfl;
      e.t_end = c.t_end;
      e.init = c.init;
      e.boundary = c.boundary;
      e.potential = c.potential.value_or(PotentialSpec{});
      if (c.rate) e.potential.decay_c = *c.rate;
      return custom_setup(e);
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown experiment");
}

SscSystem parse_ssc(const std::string& text, const std::string& source) {
  const pt::ptree tree = parse_ini(text, source);
  const Reader r(tree, source);
  SscSystem s;
  const int n = r.integer("ssc.n", 0);
  const int rr = r.integer("ssc.r", 0);
  if (n < 2 || rr < 1 || rr >= n) bad(source, "ssc.n", "need n >= 2 and 1 <= r < n");
  s.n = static_cast<std::size_t>(n);
  s.r = static_cast<std::size_t>(rr);
  const auto alpha = r.vec("ssc.alpha");
  if (alpha.size() != 2) bad(source, "ssc.alpha", "expected two entries");
  s.alpha = {alpha[0], alpha[1]};
  s.x1 = to_sym(r.mat("ssc.x1"), source + ": ssc.x1");
  s.x2 = to_sym(r.mat("ssc.x2"), source + ": ssc.x2");
  s.e = to_matrix(r.mat("ssc.e"), source + ": ssc.e");
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string idx = std::to_string(k + 1);
    s.a[k] = to_matrix(r.mat("ssc.a" + idx), source + ": ssc.a" + idx);
    s.b[k] = to_matrix(r.mat("ssc.b" + idx), source + ": ssc.b" + idx);
    s.c[k] = to_matrix(r.mat("ssc.c" + idx), source + ": ssc.c" + idx);
    s.d[k] = to_matrix(r.mat("ssc.d" + idx), source + ": ssc.d" + idx);
  }
  s.check_dimensions();
  return s;
}

SscSystem load_ssc(const std::string& path) { return parse_ssc(read_file(path), path); }

}  // namespace hyperstab
