#include "twa/verify.hpp"

#include <chrono>
#include <map>
#include <stdexcept>
#include <type_traits>

#include "twa/algebra.hpp"
#include "twa/field.hpp"
#include "twa/terwilliger.hpp"

namespace twa {
namespace {

std::string block_summary(const std::vector<BlockInfo>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += " ";
    out += b.label + ":" + std::to_string(b.size);
  }
  return out.empty() ? "none" : out;
}

template <class F>
CharacteristicResult run_characteristic(const F& field, const Scheme& s, const IntersectionTensor& t,
                                        const Classification& cls, const VerifyOptions& opts) {
  CharacteristicResult r;
  r.characteristic = field.characteristic();

  auto ctx = build_context(field, s, opts.vertex);
  auto T = generate_T(ctx);
  r.closure_dim = static_cast<long long>(T.dim());

  if (!cls.quasi_thin) {
    r.dimension = {"skipped", "no dimension formula: scheme is not quasi-thin"};
    r.decomposition = {"skipped", "structure theory applies to quasi-thin schemes only"};
  } else {
    r.formula_dim = quasithin_dimension_formula(t);
    if (r.formula_dim == r.closure_dim) {
      r.dimension = {"pass", "closure dimension " + std::to_string(r.closure_dim) +
                                 " matches (d+1)^2 + |R| + |S|"};
    } else {
      r.dimension = {"fail", "closure dimension " + std::to_string(r.closure_dim) +
                                 " != formula value " + std::to_string(r.formula_dim)};
    }

    auto dec = decompose(ctx, T);
    r.radical_dim = static_cast<long long>(dec.certificate.radical.dim());
    r.nilpotency = dec.certificate.nilpotency;
    for (const auto& [label, size] : dec.certificate.block_sizes) r.blocks.push_back({label, size});

    std::string problems;
    auto add_problem = [&problems](const std::string& p) {
      if (!problems.empty()) problems += "; ";
      problems += p;
    };

    if (!dec.certified()) add_problem("radical sandwich not certified: " + dec.certificate.failure);

    const bool expect_semisimple = cls.thin || field.characteristic() != 2;
    if (dec.certified() && dec.semisimple() != expect_semisimple) {
      add_problem(expect_semisimple
                      ? "nonzero radical where the algebra must be semisimple"
                      : "zero radical where the algebra must not be semisimple");
    }

    if (field.characteristic() == 2 && !cls.thin) {
      auto j1 = j1_basis(ctx);
      if (!(dec.certificate.radical == j1.space))
        add_problem("certified radical differs from the ideal generated by the dual J-blocks "
                    "touching a valency-2 relation");
    }

    if constexpr (std::is_same_v<F, Rationals>) {
      auto rad0 = radical_char0(T);
      if (!(rad0 == dec.certificate.radical))
        add_problem("trace-form radical disagrees with the certified radical");
    }

    if (!problems.empty()) {
      r.decomposition = {"fail", problems};
    } else if (dec.semisimple()) {
      r.decomposition = {"pass", "semisimple; blocks " + block_summary(r.blocks)};
    } else {
      r.decomposition = {"pass", "radical dim " + std::to_string(r.radical_dim) + ", nilpotency index " +
                                     std::to_string(*r.nilpotency) + "; quotient blocks " +
                                     block_summary(r.blocks)};
    }
  }

  if (!opts.all_vertices) {
    r.vertex_independence = {"skipped", "single base vertex (enable the all-vertices check)"};
  } else if (!cls.quasi_thin) {
    r.vertex_independence = {"skipped",
                             "canonical structure constants are defined for quasi-thin schemes only"};
  } else {
    auto vi = vertex_invariance(s, field);
    if (vi.ok) {
      r.vertex_independence = {"pass", "identical canonical structure constants at all " +
                                           std::to_string(s.n) + " base vertices"};
    } else {
      r.vertex_independence = {"fail", vi.detail};
    }
  }
  return r;
}

}  // namespace

VerificationReport verify_scheme(const Scheme& s, const std::string& identifier,
                                 const VerifyOptions& opts) {
  for (auto c : opts.characteristics)
    if (c != 0 && !is_prime(c))
      throw std::invalid_argument("verify_scheme: characteristic " + std::to_string(c) +
                                  " is neither zero nor prime");
  if (opts.vertex < 0 || opts.vertex >= s.n)
    throw std::invalid_argument("verify_scheme: base vertex " + std::to_string(opts.vertex) +
                                " out of range for " + std::to_string(s.n) + " vertices");

  VerificationReport rep;
  rep.identifier = identifier;
  rep.n = s.n;
  rep.d = s.d;
  rep.base_vertex = opts.vertex;

  auto validation = validate(s);
  rep.valid = validation.ok();
  if (!rep.valid) {
    rep.validation_summary = validation.summary();
    return rep;  // nothing downstream is well defined
  }

  const auto t = intersection_tensor(s);
  rep.valencies = t.k;
  std::map<long long, long long> hist;
  for (auto k : t.k) ++hist[k];
  rep.valency_histogram.assign(hist.begin(), hist.end());

  const auto cls = classify(t, 0);
  rep.thin = cls.thin;
  rep.quasi_thin = cls.quasi_thin;
  if (cls.quasi_thin) {
    rep.r_set = r_pairs(t);
    auto bp = bad_pair_analysis(t);
    rep.s_set = bp.literal;
    rep.readings_differ = bp.readings_differ;
    auto tr = triply_regular_quasithin(t);
    rep.triply_regular = tr.triply_regular;
    rep.witness = tr.witness;
  }

  for (auto c : opts.characteristics) {
    const auto start = std::chrono::steady_clock::now();
    CharacteristicResult r;
    try {
      if (c == 0)
        r = run_characteristic(Rationals{}, s, t, cls, opts);
      else
        r = run_characteristic(GFp(c), s, t, cls, opts);
    } catch (const std::exception& e) {
      r = CharacteristicResult{};
      r.characteristic = c;
      r.dimension = {"fail", std::string("pipeline error: ") + e.what()};
      r.decomposition = {"fail", std::string("pipeline error: ") + e.what()};
      r.vertex_independence = {"skipped", "pipeline error"};
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.results.push_back(std::move(r));
  }
  return rep;
}

}  // namespace twa
