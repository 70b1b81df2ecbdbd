/*
 * Copyright 2026 The qpvkex Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <thread>

#include "commands.h"
#include "qpvkex/bounds.h"
#include "qpvkex/errors.h"
#include "qpvkex/trials.h"

namespace qpvkex::cli {
namespace {


Json BoundJson(const BoundValue& b) { return {{"raw", b.raw}, {"value", b.value}}; }

CommandResult Scalar(Json result, double value) {
  CommandResult out;
  out.preferred = Format::kText;
  out.result = std::move(result);
  out.text = FormatReal(value) + "\n";
  return out;
}

std::string Lines(const std::vector<std::pair<std::string, double>>& rows) {
  std::string text;
  for (const auto& [name, value] : rows) text += name + " " + FormatReal(value) + "\n";
  return text;
}

CommandResult RunThm1(const Json& c) {
  const double eps_qkd = GetReal(c, "eps_qkd"), eps_qpv = GetReal(c, "eps_qpv");
  const int l_t = GetInt(c, "l_t");
  BoundValue literal = bounds::Thm1Bound(eps_qkd, l_t, eps_qpv, bounds::Thm1Variant::kLiteral);
  BoundValue expo = bounds::Thm1Bound(eps_qkd, l_t, eps_qpv, bounds::Thm1Variant::kExponential);
  const std::string variant = GetString(c, "variant");
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"literal", BoundJson(literal)}, {"exponential", BoundJson(expo)}, {"selected", variant}};
  if (variant == "literal") {
    out.text = FormatReal(literal.value) + "\n";
  } else if (variant == "exponential") {
    out.text = FormatReal(expo.value) + "\n";
  } else {
    out.text = Lines({{"literal", literal.value}, {"exponential", expo.value}});
  }
  return out;
}

CommandResult RunProtocol2(const Json& c) {
  const int l_k = GetInt(c, "l_k");
  BoundValue s = bounds::Protocol2Soundness(l_k, GetReal(c, "eps_qpv"), GetReal(c, "delta"));
  BoundValue r = bounds::Protocol2Robustness(l_k, GetReal(c, "eps_rob"));
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"soundness", BoundJson(s)}, {"robustness", BoundJson(r)}};
  out.text = Lines({{"soundness", s.value}, {"robustness", r.value}});
  return out;
}

CommandResult RunProtocol3(const Json& c) {
  bounds::SecurityParams p;
  p.eps_qkd = GetReal(c, "eps_qkd");
  p.eps_qpv = GetReal(c, "eps_qpv");
  p.eps_rob_qkd = GetReal(c, "eps_rob_qkd");
  p.eps_rob_qpv = GetReal(c, "eps_rob_qpv");
  p.delta_hash = GetReal(c, "delta");
  p.tag_bits = GetInt(c, "l_t");
  p.key_bits = GetInt(c, "l_k");
  p.code_bits = GetInt(c, "l_c");
  BoundValue s = bounds::Protocol3Security(p);
  BoundValue r = bounds::Protocol3Robustness(p);
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"security", BoundJson(s)}, {"robustness", BoundJson(r)}};
  out.text = Lines({{"security", s.value}, {"robustness", r.value}});
  return out;
}

CommandResult RunNets(const Json& c) {
  bounds::NetSizes n = bounds::ComputeNetSizes(GetInt(c, "q"), GetReal(c, "delta"));
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"log2_ns", n.log2_ns}, {"log2_na", n.log2_na}, {"log2_nb", n.log2_nb}};
  out.text = Lines({{"log2_ns", n.log2_ns}, {"log2_na", n.log2_na}, {"log2_nb", n.log2_nb}});
  return out;
}

CommandResult RunRounding(const Json& c) {
  const double dt = GetReal(c, "delta_tilde");
  std::uint64_t k = bounds::ClassicalRoundingSize(GetInt(c, "q"), dt);
  CommandResult out;
  out.preferred = Format::kText;
  out.result = {{"k", k}, {"log_factor", bounds::RoundingLogFactor(dt)}};
  out.text = std::to_string(k) + "\n";
  return out;
}

CommandResult RunNu(const Json& c) {
  const double q0 = GetReal(c, "q0"), dt = GetReal(c, "delta_tilde"), a = GetReal(c, "alpha_frac");
  double frac = a;
  if (GetString(c, "alpha_convention") == "alpha/2^n") {
    const int n = GetInt(c, "n");
    if (n < 0) throw ValidationError("n must be nonnegative");
    frac = std::ldexp(a, -n);
  }
  double arg = bounds::NuArgument(q0, dt, frac);
  double nu = bounds::NuValue(q0, dt, frac);
  return Scalar({{"argument", arg}, {"alpha_frac_effective", frac}, {"nu", nu}}, nu);
}

CommandResult RunEpsLb(const Json& c) {
  double v = bounds::EpsLowerBound(GetReal(c, "eta"), GetReal(c, "eta_thres"), GetReal(c, "eps_thres"),
                                   GetReal(c, "nu"), GetReal(c, "alpha"));
  return Scalar({{"eps_lb", v}}, v);
}

CommandResult RunLp(const Json& c) {
  const double eta_r = GetReal(c, "eta_r"), eta_thres = GetReal(c, "eta_thres");
  const double eps_thres = GetReal(c, "eps_thres"), eta = GetReal(c, "eta"), nu = GetReal(c, "nu");
  double closed = bounds::LpErrorLowerBound(eta_r, eta_thres, eps_thres, eta, nu);
  Json result = {{"closed_form", closed}};
  const double step = GetReal(c, "grid_step");
  if (step > 0.0) {
    result["brute_force"] = bounds::LpBruteForceOracle(eta_r, eta_thres, eps_thres, eta, nu, step);
  } else {
    result["brute_force"] = nullptr;
  }
  return Scalar(std::move(result), closed);
}

CommandResult RunFig2(const Json& c) {
  bounds::DeltaTildeTable table = bounds::LoadDeltaTable(GetString(c, "table"));
  bounds::ThresholdGrid grid;
  grid.eta_thres_step = GetReal(c, "eta_thres_step");
  grid.eps_thres_min = GetReal(c, "eps_thres_min");
  grid.eps_thres_max = GetReal(c, "eps_thres_max");
  grid.eps_thres_points = GetInt(c, "eps_thres_points");
  grid.alpha = GetReal(c, "alpha");
  grid.refine = GetBool(c, "refine");
  const double lo = GetReal(c, "eta_min"), hi = GetReal(c, "eta_max"), step = GetReal(c, "eta_step");
  if (!(step > 0.0) || hi < lo) throw ValidationError("eta range needs eta_step > 0 and eta_max >= eta_min");
  std::vector<double> etas;
  const long steps = std::lround(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= steps; ++i) etas.push_back(std::min(lo + static_cast<double>(i) * step, hi));
  const std::vector<double> q0s = GetRealList(c, "q0");
  if (q0s.empty()) throw ValidationError("q0 needs at least one value");
  const double alpha_frac = GetReal(c, "alpha_frac");
  int parallel = GetInt(c, "parallel");
  if (parallel < 0) throw ValidationError("parallel must be nonnegative");
  unsigned workers = parallel == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                   : static_cast<unsigned>(parallel);

  const std::size_t cells = q0s.size() * etas.size();
  auto optima = RunTrials(cells, 0, workers, [&](std::size_t i, std::uint64_t) {
    return bounds::OptimizeThresholds(etas[i % etas.size()], q0s[i / etas.size()], alpha_frac, table, grid);
  });

  CommandResult out;
  out.preferred = Format::kCsv;
  out.csv_header = {"eta", "eps_lb", "q0", "eta_thres", "eps_thres", "nu", "feasible"};
  Json curves = Json::array();
  for (std::size_t qi = 0; qi < q0s.size(); ++qi) {
    Json points = Json::array();
    for (std::size_t ei = 0; ei < etas.size(); ++ei) {
      const auto& o = optima[qi * etas.size() + ei];
      Json p;
      p["eta"] = etas[ei];
      p["eps_lb"] = o.best_eps_lb;
      p["eta_thres"] = o.eta_thres ? Json(*o.eta_thres) : Json(nullptr);
      p["eps_thres"] = o.eps_thres ? Json(*o.eps_thres) : Json(nullptr);
      p["nu"] = o.feasible ? Json(o.nu) : Json(nullptr);
      p["feasible"] = o.feasible;
      out.csv_rows.push_back({FormatReal(etas[ei]), FormatReal(o.best_eps_lb), FormatReal(q0s[qi]),
                              o.eta_thres ? FormatReal(*o.eta_thres) : "",
                              o.eps_thres ? FormatReal(*o.eps_thres) : "",
                              o.feasible ? FormatReal(o.nu) : "", o.feasible ? "1" : "0"});
      points.push_back(std::move(p));
    }
    curves.push_back({{"q0", q0s[qi]}, {"points", std::move(points)}});
  }
  out.result["table"] = {{"generator", table.meta().generator},
                         {"npa_level", table.meta().npa_level},
                         {"solver_tol", table.meta().solver_tol}};
  out.result["curves"] = std::move(curves);
  return out;
}

CommandResult RunManifest(const Json&) {
  CommandResult out;
  out.preferred = Format::kText;
  Json list = Json::array();
  for (const auto& e : bounds::TheoremManifest()) {
    list.push_back({{"id", e.id}, {"function", e.function}, {"statement", e.statement}});
    out.text += e.id + "  " + e.statement + "\n";
  }
  out.result["theorems"] = std::move(list);
  out.csv_header = {"id", "function", "statement"};
  for (const auto& e : bounds::TheoremManifest()) out.csv_rows.push_back({e.id, e.function, e.statement});
  return out;
}

Param InfParam(std::string key, Json def, std::string help) {
  return {std::move(key), ParamType::kRealOrInf, std::move(def), std::move(help), {}};
}

}  // namespace

std::vector<Command> BoundsCommands() {
  return {
      {"bounds", "thm1", "Protocol 1 security bound",
       {RealParam("eps_qkd", 0.0, "QKD security parameter"), IntParam("l_t", 64, "tag length l_T"),
        RealParam("eps_qpv", 0.0, "QPV security parameter"),
        ChoiceParam("variant", "both", {"both", "literal", "exponential"},
                    "literal: 1/l_T term; exponential: 2^-l_T term")},
       RunThm1},
      {"bounds", "protocol2", "message authentication soundness and robustness",
       {IntParam("l_k", 76, "key length l_K"), RealParam("eps_qpv", 0.0, "QPV security parameter"),
        RealParam("delta", 0.0, "hash family delta"), RealParam("eps_rob", 0.0, "QPV robustness parameter")},
       RunProtocol2},
      {"bounds", "protocol3", "key exchange security and robustness",
       {RealParam("eps_qkd", 0.0, "QKD security parameter"), RealParam("eps_qpv", 0.0, "QPV security parameter"),
        RealParam("eps_rob_qkd", 0.0, "QKD robustness parameter"),
        RealParam("eps_rob_qpv", 0.0, "QPV robustness parameter"), RealParam("delta", 0.0, "hash family delta"),
        IntParam("l_t", 0, "tag length l_T"), IntParam("l_k", 76, "key length l_K"),
        IntParam("l_c", 0, "codeword half length l_C")},
       RunProtocol3},
      {"bounds", "nets", "purification net sizes",
       {IntParam("q", 1, "qubits"), RealParam("delta", 1.0, "net resolution")}, RunNets},
      {"bounds", "rounding", "classical rounding size k",
       {IntParam("q", 0, "qubits"), RealParam("delta_tilde", 0.5, "trace distance lower bound")}, RunRounding},
      {"bounds", "nu", "error rate floor nu",
       {RealParam("q0", 4.0, "memory offset q0"), RealParam("delta_tilde", 0.5, "trace distance lower bound"),
        RealParam("alpha_frac", 1e-10, "alpha scaled per alpha_convention"),
        ChoiceParam("alpha_convention", "alpha/2^(2n)", {"alpha/2^(2n)", "alpha/2^n"},
                    "how alpha_frac is normalised"),
        IntParam("n", 0, "n for the alpha/2^n convention")},
       RunNu},
      {"bounds", "eps-lb", "error rate lower bound for a partition",
       {RealParam("eta", 0.9, "transmission"), RealParam("eta_thres", 0.5, "transmission threshold"),
        RealParam("eps_thres", 0.1, "error threshold"), RealParam("nu", 0.8, "error rate floor"),
        InfParam("alpha", 30.0, "concentration exponent; \"inf\" drops the factor")},
       RunEpsLb},
      {"bounds", "lp", "sub-strategy error LP, closed form and grid oracle",
       {RealParam("eta_r", 0.9, "transmission of the sub-strategy"),
        RealParam("eta_thres", 0.5, "transmission threshold"), RealParam("eps_thres", 0.2, "error threshold"),
        RealParam("eta", 0.5, "transmission"), RealParam("nu", 0.8, "error rate floor"),
        RealParam("grid_step", 1e-3, "oracle grid step; 0 skips the oracle")},
       RunLp},
      {"bounds", "fig2", "error rate lower bound curves over transmission",
       {TextParam("table", QPVKEX_DEFAULT_DELTA_TABLE, "delta-tilde table JSON"),
        {"q0", ParamType::kRealList, Json::array({10.0, 15.0}), "comma-separated q0 values", {}},
        RealParam("alpha_frac", 1e-10, "alpha / 2^(2n)"), RealParam("eta_min", 0.0, "first eta"),
        RealParam("eta_max", 1.0, "last eta"), RealParam("eta_step", 0.01, "eta spacing"),
        RealParam("eta_thres_step", 0.01, "eta_thres grid spacing"),
        RealParam("eps_thres_min", 1e-4, "smallest eps_thres"), RealParam("eps_thres_max", 0.5, "largest eps_thres"),
        IntParam("eps_thres_points", 50, "log-spaced eps_thres grid points"),
        InfParam("alpha", "inf", "concentration exponent for the bound"),
        BoolParam("refine", true, "refine eps_thres around the best grid point"),
        IntParam("parallel", 1, "worker threads; 0 uses all cores")},
       RunFig2},
      {"bounds", "manifest", "list the implemented bounds", {}, RunManifest},
  };
}

}  // namespace qpvkex::cli
