#include "stokesfilm/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "stokesfilm/geometry.hpp"

namespace stokesfilm {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::config_error, "config key '" + key + "': " + why);
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) fail(where.empty() ? k : where + "." + k, "unknown key");
  }
}

std::string join(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

double number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(join(where, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(join(where, key), "must be finite");
  return d;
}

double positive(const json& obj, const std::string& where, const char* key, double fallback) {
  const double d = number(obj, where, key, fallback);
  if (!(d > 0.0)) fail(join(where, key), "must be positive");
  return d;
}

double non_negative(const json& obj, const std::string& where, const char* key,
                    double fallback) {
  const double d = number(obj, where, key, fallback);
  if (!(d >= 0.0)) fail(join(where, key), "must be non-negative");
  return d;
}

std::size_t positive_int(const json& obj, const std::string& where, const char* key,
                         std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    fail(join(where, key), "expected a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<FourierTerm> terms(const json& obj, const std::string& where) {
  std::vector<FourierTerm> out;
  if (!obj.contains("modes")) return out;
  const json& arr = obj.at("modes");
  const std::string key = join(where, "modes");
  if (!arr.is_array()) fail(key, "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = key + "[" + std::to_string(i) + "]";
    only_keys(arr[i], w, {"mode", "amplitude", "phase"});
    FourierTerm t;
    if (!arr[i].contains("mode") || !arr[i].at("mode").is_number_integer() ||
        arr[i].at("mode").get<int>() < 1) {
      fail(w + ".mode", "expected an integer >= 1");
    }
    t.mode = arr[i].at("mode").get<int>();
    t.amplitude = number(arr[i], w, "amplitude", 0.0);
    t.phase = number(arr[i], w, "phase", 0.0);
    out.push_back(t);
  }
  return out;
}

/// A tagged choice written as {"tag": {...}} with exactly one tag.
std::pair<std::string, const json*> tagged(const json& v, const std::string& key) {
  if (!v.is_object() || v.size() != 1) fail(key, "expected an object with exactly one variant");
  return {v.begin().key(), &v.begin().value()};
}

InitialCurve parse_ic(const json& v) {
  auto [tag, body] = tagged(v, "ic");
  const std::string w = "ic." + tag;
  if (tag == "circle") {
    only_keys(*body, w, {"R"});
    return CircleIC{positive(*body, w, "R", 1.0)};
  }
  if (tag == "ellipse") {
    only_keys(*body, w, {"a", "b"});
    return EllipseIC{positive(*body, w, "a", 2.0), positive(*body, w, "b", 1.0)};
  }
  if (tag == "fourier") {
    only_keys(*body, w, {"R", "modes"});
    return FourierIC{positive(*body, w, "R", 1.0), terms(*body, w)};
  }
  fail("ic", "unknown variant '" + tag + "' (circle, ellipse, fourier)");
}

InitialThickness parse_h0(const json& v) {
  auto [tag, body] = tagged(v, "h0");
  const std::string w = "h0." + tag;
  if (tag == "constant") {
    only_keys(*body, w, {"c"});
    const double c = number(*body, w, "c", 1.0);
    if (!(c > 0.0)) {
      fail(w + ".c", "h0 must be positive everywhere (positivity hypothesis violated)");
    }
    return ConstantH0{c};
  }
  if (tag == "fourier") {
    only_keys(*body, w, {"mean", "modes"});
    FourierH0 h{number(*body, w, "mean", 1.0), terms(*body, w)};
    double amp = 0.0;
    for (const auto& t : h.terms) amp += std::abs(t.amplitude);
    if (!(h.mean > amp)) {
      fail(w, "mean must exceed the sum of |amplitude| so that h0 > 0 "
              "(positivity hypothesis violated)");
    }
    return h;
  }
  fail("h0", "unknown variant '" + tag + "' (constant, fourier)");
}

Ambient parse_ambient(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "none") return Ambient::none();
    fail("ambient", "expected \"none\" or {\"linear\": [[a, b], [c, d]]}");
  }
  auto [tag, body] = tagged(v, "ambient");
  if (tag == "none") return Ambient::none();
  if (tag != "linear") fail("ambient", "unknown variant '" + tag + "' (none, linear)");
  const json& m = *body;
  auto bad = [] { fail("ambient.linear", "expected a 2x2 array of numbers"); };
  if (!m.is_array() || m.size() != 2) bad();
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) bad();
  }
  const Mat2 g{m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(),
               m[1][1].get<double>()};
  if (!(std::abs(g.trace()) <= 1e-12)) fail("ambient.linear", "matrix must be trace free");
  return Ambient::linear(g);
}

double eval_terms(const std::vector<FourierTerm>& ts, double eta) {
  double s = 0.0;
  for (const auto& t : ts) s += t.amplitude * std::cos(kTwoPi * t.mode * eta + t.phase);
  return s;
}

}  // namespace

StepConfig RunConfig::step_config() const {
  StepConfig c;
  c.dt = dt;
  c.integrator = integrator;
  c.mollify_eps = mollify_eps;
  c.resample_every = resample_every;
  c.tol_param = tol_param;
  c.arc_chord_factor = stop_arc_chord_factor;
  c.energy_ceiling = energy_ceiling;
  return c;
}

FlowParams RunConfig::flow_params() const {
  FlowParams p;
  p.mu = mu;
  p.ambient = ambient;
  p.reg_eps = reg_eps;
  return p;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config_error, std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "",
            {"ic", "h0", "N", "dt", "T", "integrator", "resample_every", "tol_param",
             "mollify_eps", "reg_eps", "mu", "ambient", "output_path", "snapshot_stride",
             "stop_arc_chord_factor", "energy_ceiling"});
  RunConfig c;
  if (doc.contains("ic")) c.ic = parse_ic(doc.at("ic"));
  if (doc.contains("h0")) c.h0 = parse_h0(doc.at("h0"));
  c.N = positive_int(doc, "", "N", c.N);
  if (c.N < PeriodicCurve::kMinNodes || c.N % 2 != 0) fail("N", "must be even and >= 16");
  c.dt = positive(doc, "", "dt", c.dt);
  c.T = non_negative(doc, "", "T", c.T);
  if (doc.contains("integrator")) {
    const json& v = doc.at("integrator");
    if (v == "rk4") {
      c.integrator = Integrator::rk4;
    } else if (v == "euler") {
      c.integrator = Integrator::euler;
    } else {
      fail("integrator", "expected \"rk4\" or \"euler\"");
    }
  }
  c.resample_every = positive_int(doc, "", "resample_every", c.resample_every);
  c.tol_param = positive(doc, "", "tol_param", c.tol_param);
  c.mollify_eps = non_negative(doc, "", "mollify_eps", c.mollify_eps);
  c.reg_eps = non_negative(doc, "", "reg_eps", c.reg_eps);
  c.mu = positive(doc, "", "mu", c.mu);
  if (doc.contains("ambient")) c.ambient = parse_ambient(doc.at("ambient"));
  if (doc.contains("output_path")) {
    const json& v = doc.at("output_path");
    if (!v.is_string() || v.get<std::string>().empty()) {
      fail("output_path", "expected a non-empty string");
    }
    c.output_path = v.get<std::string>();
  }
  c.snapshot_stride = positive_int(doc, "", "snapshot_stride", c.snapshot_stride);
  c.stop_arc_chord_factor = positive(doc, "", "stop_arc_chord_factor", c.stop_arc_chord_factor);
  if (c.stop_arc_chord_factor <= 1.0) fail("stop_arc_chord_factor", "must exceed 1");
  if (doc.contains("energy_ceiling") && !doc.at("energy_ceiling").is_null()) {
    c.energy_ceiling = positive(doc, "", "energy_ceiling", 1.0);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<Vec2> initial_curve_nodes(const InitialCurve& ic, std::size_t n) {
  std::vector<Vec2> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = grid_point(j, n);
    const double s = std::sin(kTwoPi * eta);
    const double c = std::cos(kTwoPi * eta);
    if (const auto* circle = std::get_if<CircleIC>(&ic)) {
      p[j] = {circle->R * s, circle->R * c};
    } else if (const auto* e = std::get_if<EllipseIC>(&ic)) {
      p[j] = {e->a * s, e->b * c};
    } else {
      const auto& f = std::get<FourierIC>(ic);
      const double r = f.R + eval_terms(f.terms, eta);
      if (!(r > 0.0)) {
        fail("ic.fourier", "polar radius r(theta) = " + std::to_string(r) +
                               " is not positive at theta = " + std::to_string(eta));
      }
      p[j] = {r * s, r * c};
    }
  }
  return p;
}

SimState build_initial_state(const RunConfig& cfg) {
  const std::size_t n = cfg.N;
  const PeriodicCurve raw(initial_curve_nodes(cfg.ic, n), 1.0);
  const PeriodicCurve sampled(raw.nodes(), geometric_length(raw));
  double ac = 0.0;
  try {
    ac = arc_chord(sampled);
  } catch (const Error& e) {
    fail("ic", std::string("initial curve is not simple: ") + e.what());
  }
  if (!std::isfinite(ac) || ac > 1e8) {
    fail("ic", "initial curve is nearly self-intersecting (arc-chord " + std::to_string(ac) + ")");
  }
  PeriodicCurve curve = resample_arclength(sampled, ScalarField(n, 1.0)).first;

  ScalarField h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = grid_point(j, n);
    if (const auto* c = std::get_if<ConstantH0>(&cfg.h0)) {
      h[j] = c->c;
    } else {
      const auto& f = std::get<FourierH0>(cfg.h0);
      h[j] = f.mean + eval_terms(f.terms, eta);
    }
  }
  return mollify_initial_state(SimState(std::move(curve), std::move(h)), cfg.mollify_eps);
}

}  // namespace stokesfilm
