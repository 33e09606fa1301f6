#include "wpcollapse.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "error.hpp"
#include "json_io.hpp"
#include "reduction.hpp"
#include "suites.hpp"
#include "tropical.hpp"

using namespace wpc;

struct wpc_point {
  SiegelPoint p;
};

namespace {

thread_local std::string g_last_error;

wpc_status map_errc(Errc c) {
  switch (c) {
    case Errc::NotPositiveDefinite: return WPC_ERR_NOT_POSITIVE_DEFINITE;
    case Errc::NotSymmetric: return WPC_ERR_NOT_SYMMETRIC;
    case Errc::DimensionMismatch: return WPC_ERR_DIMENSION_MISMATCH;
    case Errc::NumericallySingular: return WPC_ERR_NUMERICALLY_SINGULAR;
    case Errc::NoConvergence: return WPC_ERR_NO_CONVERGENCE;
    case Errc::NotVertical: return WPC_ERR_NOT_VERTICAL;
    case Errc::BaseMismatch: return WPC_ERR_BASE_MISMATCH;
    case Errc::NotInSiegelSet: return WPC_ERR_NOT_IN_SIEGEL_SET;
    case Errc::NotDeepEnough: return WPC_ERR_NOT_DEEP_ENOUGH;
    case Errc::NonpositiveScale: return WPC_ERR_NONPOSITIVE_SCALE;
    case Errc::SiegelChainViolated: return WPC_ERR_SIEGEL_CHAIN_VIOLATED;
    case Errc::DegenerateInput: return WPC_ERR_DEGENERATE_INPUT;
    case Errc::DegenerateDirection: return WPC_ERR_DEGENERATE_DIRECTION;
    case Errc::SamplesTooCoarse: return WPC_ERR_SAMPLES_TOO_COARSE;
    case Errc::IntegerOverflow: return WPC_ERR_INTEGER_OVERFLOW;
    case Errc::BadInput: return WPC_ERR_BAD_INPUT;
    case Errc::Io: return WPC_ERR_IO;
  }
  return WPC_ERR_UNKNOWN;
}

template <typename F>
wpc_status guarded(F&& f) {
  try {
    f();
    return WPC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WPC_ERR_UNKNOWN;
  }
}

Mat mat_from(int r, int c, const double* data) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = data[i * c + j];
  return m;
}

void mat_to(const Mat& m, double* out) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* wpc_last_error(void) { return g_last_error.c_str(); }

wpc_status wpc_point_create(int g, const double* x, const double* y, wpc_point** out) {
  return guarded([&] {
    if (g < 0 || !x || !y || !out) fail(Errc::BadInput, "null argument");
    *out = new wpc_point{make_siegel_point(mat_from(g, g, x), mat_from(g, g, y))};
  });
}

void wpc_point_destroy(wpc_point* p) { delete p; }

int wpc_point_dim(const wpc_point* p) { return p ? p->p.dim() : -1; }

wpc_status wpc_point_data(const wpc_point* p, double* x_out, double* y_out) {
  return guarded([&] {
    if (!p || !x_out || !y_out) fail(Errc::BadInput, "null argument");
    mat_to(p->p.X, x_out);
    mat_to(p->p.Y, y_out);
  });
}

wpc_status wpc_wp_norm_sq(const wpc_point* tau, const double* vx, const double* vy,
                          double* out) {
  return guarded([&] {
    if (!tau || !vx || !vy || !out) fail(Errc::BadInput, "null argument");
    const int g = tau->p.dim();
    *out = wp_norm_sq(tau->p, TangentVec{mat_from(g, g, vx), mat_from(g, g, vy)});
  });
}

wpc_status wpc_siegel_distance(const wpc_point* a, const wpc_point* b, double* out) {
  return guarded([&] {
    if (!a || !b || !out) fail(Errc::BadInput, "null argument");
    *out = siegel_distance(a->p, b->p);
  });
}

wpc_status wpc_trwp_distance(int r, const double* p, const double* q, double* out) {
  return guarded([&] {
    if (!p || !q || !out) fail(Errc::BadInput, "null argument");
    *out = trwp_distance(mat_from(r, r, p), mat_from(r, r, q));
  });
}

wpc_status wpc_reduce_spd(int g, const double* y, double u, double* y_red,
                          int64_t* u_out, int* swaps_out) {
  return guarded([&] {
    if (!y || !y_red || !u_out) fail(Errc::BadInput, "null argument");
    ReduceResult res = reduce_spd(mat_from(g, g, y), u);
    mat_to(res.y_red, y_red);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) u_out[i * g + j] = res.u(i, j);
    if (swaps_out) *swaps_out = res.swaps;
  });
}

wpc_status wpc_in_siegel_set(const wpc_point* tau, double u, int* out) {
  return guarded([&] {
    if (!tau || !out) fail(Errc::BadInput, "null argument");
    *out = in_siegel_set(tau->p, u) ? 1 : 0;
  });
}

wpc_status wpc_project(const wpc_point* tau, int gprime, double* xprime_out,
                       double* yprime_out, double* t_out) {
  return guarded([&] {
    if (!tau || !xprime_out || !yprime_out || !t_out) fail(Errc::BadInput, "null argument");
    BasePoint base = project(tau->p, gprime);
    mat_to(base.tau_prime.X, xprime_out);
    mat_to(base.tau_prime.Y, yprime_out);
    mat_to(base.t, t_out);
  });
}

wpc_status wpc_fiber_diameter_bound(const wpc_point* tau, int gprime, double u,
                                    double* out) {
  return guarded([&] {
    if (!tau || !out) fail(Errc::BadInput, "null argument");
    *out = fiber_diameter_bound(project(tau->p, gprime), gprime, u);
  });
}

wpc_status wpc_lambda_lower_bound(const wpc_point* tau, int gprime, double u, double* out) {
  return guarded([&] {
    if (!tau || !out) fail(Errc::BadInput, "null argument");
    *out = lambda_lower_bound(tau->p, gprime, u);
  });
}

wpc_status wpc_collapse_bounds(const wpc_point* tau, int gprime, double R, double u,
                               double* lambda_lo, double* lambda_hi, double* delta,
                               double* gh_upper) {
  return guarded([&] {
    if (!tau) fail(Errc::BadInput, "null argument");
    CollapseBounds cb = collapse_bounds(tau->p, gprime, R, u);
    if (lambda_lo) *lambda_lo = cb.lambda_lo;
    if (lambda_hi) *lambda_hi = cb.lambda_hi;
    if (delta) *delta = cb.delta;
    if (gh_upper) *gh_upper = cb.gh_upper;
  });
}

wpc_status wpc_cmd_reduce(const char* point_json, double u, char** json_out) {
  return guarded([&] {
    if (!point_json || !json_out) fail(Errc::BadInput, "null argument");
    SiegelPoint tau = point_from_json(Json::parse(point_json));
    ReduceResult res = reduce_spd(tau.Y, u);
    SiegelPoint red = make_siegel_point(tau.X, res.y_red);
    SiegelCoords coords = siegel_coords(red);
    SpdMembership mem = spd_membership(res.y_red, u);
    Json d = Json::array();
    for (int i = 0; i < coords.d.size(); ++i) d.push_back(coords.d(i));
    Json j{{"y_red", mat_to_json(res.y_red)},
           {"x", mat_to_json(coords.x)},
           {"l", mat_to_json(coords.l)},
           {"d", d},
           {"swaps", res.swaps},
           {"membership",
            Json{{"l_ok", mem.l_ok},
                 {"chain_ok", mem.chain_ok},
                 {"scale_ok", mem.scale_ok},
                 {"all", mem.all()}}}};
    Json umat = Json::array();
    for (int i = 0; i < res.u.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < res.u.cols(); ++k) row.push_back(res.u(i, k));
      umat.push_back(row);
    }
    j["U"] = umat;
    *json_out = dup_string(j.dump(2));
  });
}

wpc_status wpc_cmd_dist(const char* request_json, char** json_out) {
  return guarded([&] {
    if (!request_json || !json_out) fail(Errc::BadInput, "null argument");
    Json req = Json::parse(request_json);
    const std::string kind = req.value("kind", "siegel");
    Json j;
    if (kind == "siegel") {
      j["distance"] = siegel_distance(point_from_json(req.at("a")), point_from_json(req.at("b")));
    } else if (kind == "tropical") {
      j["distance"] = trwp_distance(mat_from_json(req.at("a")), mat_from_json(req.at("b")));
    } else if (kind == "base") {
      const int gp = req.at("gprime").get<int>();
      BasePoint a = project(point_from_json(req.at("a")), gp);
      BasePoint b = project(point_from_json(req.at("b")), gp);
      j["distance"] = base_distance(a, b);
    } else {
      fail(Errc::BadInput, "kind must be siegel|tropical|base");
    }
    j["kind"] = kind;
    *json_out = dup_string(j.dump(2));
  });
}

wpc_status wpc_cmd_project(const char* point_json, int gprime, char** json_out) {
  return guarded([&] {
    if (!point_json || !json_out) fail(Errc::BadInput, "null argument");
    SiegelPoint tau = point_from_json(Json::parse(point_json));
    BasePoint base = project(tau, gprime);
    Json j{{"gprime", gprime},
           {"tau_prime", point_to_json(base.tau_prime)},
           {"t", mat_to_json(base.t)}};
    *json_out = dup_string(j.dump(2));
  });
}

wpc_status wpc_cmd_fiber_diam(const char* point_json, int gprime, double u, int samples,
                              uint64_t seed, char** json_out) {
  return guarded([&] {
    if (!point_json || !json_out) fail(Errc::BadInput, "null argument");
    SiegelPoint tau = point_from_json(Json::parse(point_json));
    BasePoint base = project(tau, gprime);
    Json j{{"gprime", gprime},
           {"lambda_min", lambda_min_sym(base.t)},
           {"fiber_diam_upper", fiber_diameter_upper(base, gprime, u, samples, seed)},
           {"bound_eq42", fiber_diameter_bound(base, gprime, u)}};
    *json_out = dup_string(j.dump(2));
  });
}

wpc_status wpc_collapse_run(const char* config_json, char** report_json,
                            char** report_csv) {
  return guarded([&] {
    if (!config_json) fail(Errc::BadInput, "null argument");
    Json cfg = Json::parse(config_json);
    DegenerationSpec spec = spec_from_json(cfg.at("spec"));
    const double R = cfg.value("R", 1.0);
    const int m = cfg.value("samples", 40);
    const int n_max = cfg.value("n_max", 12);
    const int fiber_samples = cfg.value("fiber_samples", 8);
    ExperimentReport rep = run_experiment(spec, R, m, n_max, fiber_samples);
    if (report_json) *report_json = dup_string(report_to_json(rep).dump(2));
    if (report_csv) *report_csv = dup_string(report_to_csv(rep));
  });
}

wpc_status wpc_run_suite(const char* name, char** json_out) {
  return guarded([&] {
    if (!name || !json_out) fail(Errc::BadInput, "null argument");
    const std::string n = name;
    Json j = Json::array();
    if (n == "g1" || n == "all") j.push_back(suite_to_json(g1_suite()));
    if (n == "g2" || n == "all") j.push_back(suite_to_json(g2_suite()));
    if (n == "properties" || n == "all") j.push_back(suite_to_json(properties_suite()));
    if (j.empty()) fail(Errc::BadInput, "unknown suite: " + n);
    *json_out = dup_string(j.dump(2));
  });
}

void wpc_string_free(char* s) { std::free(s); }

}  // extern "C"
