#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twa {

/// An association scheme given by its relation matrix: rel(i,j) = index of
/// the relation containing the pair (i,j), with R_0 the identity relation.
struct Scheme {
  int n = 0;              ///< number of vertices
  int d = 0;              ///< relations are R_0 .. R_d
  std::vector<int> rel;   ///< n*n row-major, entries in [0, d]

  int at(int i, int j) const { return rel[static_cast<std::size_t>(i) * n + j]; }
  bool operator==(const Scheme&) const = default;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical file format: '#' comment lines and blank lines are ignored; the
/// first data line is "n d"; the next n data lines carry n entries each.
Scheme parse_scheme(std::string_view text);

/// Import mode: headerless whitespace-separated matrix.  n is the token
/// count of the first data line, d the maximum entry.
Scheme parse_scheme_matrix(std::string_view text);

/// Canonical serialisation; parse_scheme(serialize(s)) == s.
std::string serialize(const Scheme& s);

struct AxiomViolation {
  std::string axiom;    ///< "R_0 not diagonal" | "labels" | "transpose" | "regularity"
  std::string message;  ///< includes a concrete witness
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks the three scheme axioms directly on the relation matrix:
/// R_0 is exactly the diagonal, the transpose of each relation is a
/// relation, and the triple counts behind each intersection number are
/// constant over the pairs of a relation (full brute force).
ValidationReport validate(const Scheme& s);

/// Intersection numbers p_{uv}^w, valencies and the dual (transpose) map.
struct IntersectionTensor {
  int n = 0;
  int d = 0;
  std::vector<long long> p;   ///< (d+1)^3 entries
  std::vector<long long> k;   ///< valencies k_0..k_d
  std::vector<int> dual;      ///< dual[a] = a' with R_{a'} = transpose of R_a

  long long at(int u, int v, int w) const {
    const int m = d + 1;
    return p[(static_cast<std::size_t>(u) * m + v) * m + w];
  }
  long long valency(int a) const { return k[a]; }
  int star(int a) const { return dual[a]; }
};

/// Computes the tensor from a representative pair of each relation; rejects
/// invalid schemes (regularity failures make p_{uv}^w ill-defined).
IntersectionTensor intersection_tensor(const Scheme& s);

/// Complex product R_a R_b: ascending list of z with p_{ab}^z > 0.
std::vector<int> complex_product(const IntersectionTensor& t, int a, int b);

/// Number of nonzero intersection numbers; for quasi-thin schemes this
/// equals (d+1)^2 + #{(a,b) : |R_{a'} R_b| = 2}.
long long count_nonzero_intersections(const IntersectionTensor& t);

struct Classification {
  bool thin = false;            ///< all valencies 1
  bool quasi_thin = false;      ///< all valencies <= 2
  bool p_prime_valenced = false;///< no valency divisible by the characteristic
  std::uint64_t characteristic = 0;
};

/// characteristic must be 0 or a prime.
Classification classify(const IntersectionTensor& t, std::uint64_t characteristic);

}  // namespace twa
