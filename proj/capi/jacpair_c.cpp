#include "jacpair_c.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "jacpair/expansion.hpp"
#include "jacpair/newton.hpp"
#include "jacpair/normalform.hpp"
#include "jacpair/poisson.hpp"
#include "jacpair/reduction.hpp"
#include "jacpair/series.hpp"
#include "jacpair/verifier.hpp"
#include "jacpair/weyl.hpp"

using nlohmann::ordered_json;
using namespace jac;

struct jp_series {
  Series s;
};
struct jp_weyl {
  WeylSeries w;
};

namespace {

thread_local std::string g_last_error;

char* dup_str(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail(Err code, const std::string& msg) {
  g_last_error = msg;
  return static_cast<int>(code);
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return JP_OK;
  } catch (const JacError& e) {
    return fail(e.code, e.what());
  } catch (const std::exception& e) {
    return fail(Err::INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* jp_err_name(int code) { return err_name(static_cast<Err>(code)); }
const char* jp_last_error(void) { return g_last_error.c_str(); }
void jp_free(char* s) { std::free(s); }

int jp_series_parse(const char* json, jp_series** out) {
  return guarded([&] { *out = new jp_series{from_json(json)}; });
}

int jp_series_json(const jp_series* s, char** out) {
  return guarded([&] { *out = dup_str(to_json(s->s)); });
}

int jp_series_pretty(const jp_series* s, char** out) {
  return guarded([&] { *out = dup_str(pretty(s->s)); });
}

void jp_series_release(jp_series* s) { delete s; }

int jp_series_add(const jp_series* a, const jp_series* b, jp_series** out) {
  return guarded([&] { *out = new jp_series{add(a->s, b->s)}; });
}

int jp_series_mul(const jp_series* a, const jp_series* b, jp_series** out) {
  return guarded([&] { *out = new jp_series{mul(a->s, b->s)}; });
}

int jp_series_bracket(const jp_series* a, const jp_series* b, jp_series** out) {
  return guarded([&] { *out = new jp_series{bracket(a->s, b->s)}; });
}

int jp_series_equal(const jp_series* a, const jp_series* b, int* eq) {
  return guarded([&] { *eq = equal(a->s, b->s) ? 1 : 0; });
}

int jp_weyl_parse(const char* json, jp_weyl** out) {
  return guarded([&] { *out = new jp_weyl{weyl_from_json(json)}; });
}

int jp_weyl_json(const jp_weyl* w, char** out) {
  return guarded([&] { *out = dup_str(weyl_to_json(w->w)); });
}

void jp_weyl_release(jp_weyl* w) { delete w; }

int jp_weyl_product(const jp_weyl* a, const jp_weyl* b, long long depth, jp_weyl** out) {
  return guarded([&] { *out = new jp_weyl{normal_product(a->w, b->w, depth)}; });
}

int jp_weyl_bracket(const jp_weyl* a, const jp_weyl* b, long long depth, jp_weyl** out) {
  return guarded([&] { *out = new jp_weyl{weyl_bracket(a->w, b->w, depth)}; });
}

int jp_weyl_trace(const jp_weyl* w, char** out) {
  return guarded([&] { *out = dup_str(rat_str(weyl_trace(w->w))); });
}

int jp_set_n_cap(long long cap) {
  return guarded([&] { set_n_cap(cap); });
}

}  // extern "C"

namespace {

Series series_of(const ordered_json& j) { return from_json(j.dump()); }
ordered_json json_of(const Series& s) { return ordered_json::parse(to_json(s)); }

ordered_json floors_of(const Series& s) {
  ordered_json f;
  f["xFloor"] = s.xFloor ? ordered_json(rat_str(*s.xFloor)) : ordered_json(nullptr);
  f["yFloor"] = s.yFloor ? ordered_json(std::to_string(*s.yFloor)) : ordered_json(nullptr);
  return f;
}

std::string exp_value(const ordered_json& e) {
  if (e.is_object() && e.contains("value") && e["value"].is_string())
    return e["value"].get<std::string>();
  if (e.is_string()) return e.get<std::string>();
  throw JacError(Err::PARSE_ERROR, "expected-value entries need a string value");
}

ordered_json exp_series(const ordered_json& e) {
  if (e.is_object() && e.contains("value") && e["value"].is_object()) return e["value"];
  return e;
}

struct Checker {
  const ordered_json* expected;
  bool pass = true;
  std::string mismatch;

  void scalar(const std::string& key, const Rat& got) {
    if (!expected || !expected->contains(key)) return;
    Rat want = rat_parse(exp_value((*expected)[key]));
    if (got != want) {
      pass = false;
      mismatch += key + ": got " + rat_str(got) + ", want " + rat_str(want) + "; ";
    }
  }
  void integer(const std::string& key, long long got) { scalar(key, Rat(got)); }
  void text(const std::string& key, const std::string& got) {
    if (!expected || !expected->contains(key)) return;
    std::string want = exp_value((*expected)[key]);
    if (got != want) {
      pass = false;
      mismatch += key + ": got " + got + ", want " + want + "; ";
    }
  }
  void series(const std::string& key, const Series& got) {
    if (!expected || !expected->contains(key)) return;
    Series want = series_of(exp_series((*expected)[key]));
    if (!equal(got, want)) {
      pass = false;
      mismatch += key + ": series mismatch; ";
    }
  }
};

std::string prime_str(const PrimeDegree& p) {
  switch (p.kind) {
    case PrimeKind::NEG_INF: return "-inf";
    case PrimeKind::POS_INF: return "+inf";
    default: return rat_str(p.value);
  }
}

ordered_json run_impl(const ordered_json& req) {
  std::string op = req.at("op").get<std::string>();
  long long depth = req.value("depth", 12LL);
  ordered_json fixture = req.value("fixture", ordered_json::object());
  ordered_json payload = fixture.value("payload", ordered_json::object());
  const ordered_json* expected = nullptr;
  ordered_json expStore;
  if (fixture.contains("expected") && fixture["expected"].is_object()) {
    expStore = fixture["expected"];
    expected = &expStore;
  }
  Checker ck{expected};
  ordered_json values = ordered_json::object();
  ordered_json floors = ordered_json::object();

  if (op == "bracket") {
    Series F = series_of(payload.at("F"));
    Series G = series_of(payload.at("G"));
    Series B = bracket(F, G);
    values["bracket"] = json_of(B);
    floors = floors_of(B);
    bool isConst = true;
    for (auto& [k, c] : B.terms)
      if (!(k.x == 0 && k.y == 0)) isConst = false;
    if (isConst) {
      values["constant"] = rat_str(coeff(B, Rat(0), 0));
      ck.scalar("bracket", coeff(B, Rat(0), 0));
    } else {
      ck.series("bracket", B);
    }
  } else if (op == "newton") {
    Series F = series_of(payload.at("F"));
    values["polygon"] = ordered_json::parse(polygon_json(newton_polygon(F)));
    values["primeDegree"] = prime_str(prime_degree(F));
    values["m0"] = rat_str(vertex_m0(F));
    values["m"] = vertex_m(F);
    ck.text("primeDegree", values["primeDegree"].get<std::string>());
    ck.scalar("m0", vertex_m0(F));
    ck.integer("m", vertex_m(F));
  } else if (op == "prime-degree") {
    Series F = series_of(payload.at("F"));
    PrimeDegree p = prime_degree(F);
    values["p"] = prime_str(p);
    ck.text("p", values["p"].get<std::string>());
  } else if (op == "components") {
    Series F = series_of(payload.at("F"));
    Rat p = payload.contains("p") ? rat_parse(payload["p"].get<std::string>())
                                  : prime_degree(F).value;
    values["p"] = rat_str(p);
    auto idx = component_indices(F, p);
    auto arr = ordered_json::array();
    auto comps = ordered_json::array();
    for (auto& r : idx) {
      arr.push_back(rat_str(r));
      comps.push_back(json_of(component(F, p, r)));
    }
    values["indices"] = arr;
    values["components"] = comps;
    ck.series("component0", component(F, p, Rat(0)));
  } else if (op == "expand") {
    Series F = series_of(payload.at("F"));
    Series G = series_of(payload.at("G"));
    ExpansionCoeffs ec = expand_G_in_F(F, G, depth);
    values["expansion"] = ordered_json::parse(expansion_json(ec));
    values["m"] = ec.m;
    values["n"] = ec.n;
    ck.integer("m", ec.m);
    ck.integer("n", ec.n);
  } else if (op == "r0") {
    Series F = series_of(payload.at("F"));
    Series G = series_of(payload.at("G"));
    Series R0 = compute_R0(F, G, depth);
    values["R0"] = json_of(R0);
    floors = floors_of(R0);
    ck.series("R0", R0);
  } else if (op == "reduce") {
    Series F = series_of(payload.at("F"));
    Series G = series_of(payload.at("G"));
    NormalizedPair np = reduce_to_normal_form(F, G);
    values["normalized"] = ordered_json::parse(normalized_json(np));
    values["m"] = np.m;
    values["n"] = np.n;
    values["J"] = rat_str(np.J);
    ck.integer("m", np.m);
    ck.integer("n", np.n);
    ck.scalar("J", np.J);
  } else if (op == "normalize") {
    Series F = series_of(payload.at("F"));
    Series G = series_of(payload.at("G"));
    NormalizedPair np = reduce_to_normal_form(F, G);
    HKResult hk = normalize_to_HK(np, depth);
    Series HKb = bracket(hk.H, hk.K);
    values["H"] = json_of(hk.H);
    values["K"] = json_of(hk.K);
    values["alpha"] = nullptr;
    values["beta"] = nullptr;
    try {
      AlphaDecomposition de = alpha_decompose(hk);
      values["alpha"] = rat_str(de.alpha);
      values["beta"] = de.beta;
      ck.scalar("alpha", de.alpha);
      ck.integer("beta", de.beta);
    } catch (const JacError& e) {
      // a pair that normalizes cleanly has no tail to pin alpha
      if (e.code != Err::DEGENERATE && e.code != Err::DEPTH_INSUFFICIENT) throw;
      values["alphaNote"] = e.what();
      if (expected && (expected->contains("alpha") || expected->contains("beta"))) {
        ck.pass = false;
        ck.mismatch += "alpha expected but undetermined: " + std::string(e.what()) + "; ";
      }
    }
    values["bracketHK"] = json_of(HKb);
    floors = floors_of(hk.H);
    Series one = make_const(HKb.space, Rat(1));
    one = truncated(one, HKb.xFloor, HKb.yFloor);
    if (!equal(HKb, one)) {
      ck.pass = false;
      ck.mismatch += "bracket of H, K is not 1 above the floor; ";
    }
  } else if (op == "weyl") {
    if (payload.contains("m0")) {
      long long m0 = payload.at("m0").get<long long>();
      long long m = payload.at("m").get<long long>();
      VertexSolution vs = dixmier_vertex_solve(m0, m);
      values["alpha"] = rat_str(vs.alpha);
      values["beta"] = rat_str(vs.beta);
      Verdict v = vertex_bracket_check(m0, m, payload.value("depth", depth));
      values["bracketCheck"] = v.pass;
      values["detail"] = v.detail;
      if (!v.pass) {
        ck.pass = false;
        ck.mismatch += "vertex bracket check: " + v.detail + "; ";
      }
      ck.scalar("alpha", vs.alpha);
      ck.scalar("beta", vs.beta);
    } else {
      WeylSeries F = weyl_from_json(payload.at("F").dump());
      WeylSeries G = weyl_from_json(payload.at("G").dump());
      WeylSeries B = weyl_bracket(F, G, depth);
      values["bracket"] = ordered_json::parse(weyl_to_json(B));
      bool isConst = true;
      for (auto& [k, c] : B.terms)
        if (!(k.u == 0 && k.v == 0)) isConst = false;
      if (isConst) {
        values["constant"] = rat_str(weyl_coeff(B, Rat(0), 0));
        ck.scalar("bracket", weyl_coeff(B, Rat(0), 0));
      }
    }
  } else if (op == "verify") {
    Verdict a = verify_main_identity();
    Verdict b = verify_r_coefficients();
    Verdict c = verify_tilde_r();
    values["identity"] = ordered_json{{"pass", a.pass}, {"detail", a.detail}};
    values["coefficients"] = ordered_json{{"pass", b.pass}, {"detail", b.detail}};
    values["shiftedCoefficients"] = ordered_json{{"pass", c.pass}, {"detail", c.detail}};
    if (!a.pass || !b.pass || !c.pass) {
      ck.pass = false;
      ck.mismatch += "symbolic verification failed; ";
    }
  } else {
    throw JacError(Err::PARSE_ERROR, "unknown op: " + op);
  }

  ordered_json resp;
  resp["ok"] = ck.pass;
  resp["verdict"] = ck.pass ? "pass" : "fail";
  if (!ck.mismatch.empty()) resp["mismatch"] = ck.mismatch;
  resp["values"] = values;
  resp["floors"] = floors;
  return resp;
}

}  // namespace

extern "C" int jp_run(const char* request_json, char** response_json) {
  ordered_json resp;
  int rc = JP_OK;
  try {
    ordered_json req = ordered_json::parse(request_json);
    resp = run_impl(req);
  } catch (const JacError& e) {
    rc = fail(e.code, e.what());
    resp = ordered_json{{"ok", false},
                        {"verdict", "fail"},
                        {"error",
                         {{"code", rc}, {"name", err_name(e.code)}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    rc = fail(Err::PARSE_ERROR, e.what());
    resp = ordered_json{{"ok", false},
                        {"verdict", "fail"},
                        {"error",
                         {{"code", rc}, {"name", "PARSE_ERROR"}, {"message", e.what()}}}};
  }
  *response_json = dup_str(resp.dump());
  return rc;
}
