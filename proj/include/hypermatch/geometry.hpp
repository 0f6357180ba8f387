#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypermatch/instance.hpp"

namespace hypermatch {

/// Arithmetic tables for GF(q), q in {2,3,4,5,7,8,9}. Prime q is modular;
/// prime powers are built from the Conway polynomial of the extension, with
/// elements encoded base p by their polynomial coefficients.
class GaloisField {
public:
  explicit GaloisField(int q) : q_(q) {
    struct Extension {
      int q, p, n;
      std::array<int, 3> reduction;  // coefficients of x^n, low degree first
    };
    // x^2+x+1 over F2, x^3+x+1 over F2, x^2+2x+2 over F3.
    static constexpr Extension extensions[] = {
        {4, 2, 2, {1, 1, 0}},
        {8, 2, 3, {1, 1, 0}},
        {9, 3, 2, {2, 2, 0}},
    };
    add_.assign(q_, std::vector<int>(q_));
    mul_.assign(q_, std::vector<int>(q_));
    if (q == 2 || q == 3 || q == 5 || q == 7) {
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          add_[a][b] = (a + b) % q;
          mul_[a][b] = (a * b) % q;
        }
      return;
    }
    for (const auto& ext : extensions) {
      if (ext.q != q) continue;
      const int p = ext.p, n = ext.n;
      auto digits = [&](int x) {
        std::vector<int> out(n);
        for (int i = 0; i < n; ++i) {
          out[i] = x % p;
          x /= p;
        }
        return out;
      };
      auto encode = [&](const std::vector<int>& poly) {
        int x = 0;
        for (int i = n - 1; i >= 0; --i) x = x * p + poly[i];
        return x;
      };
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          auto da = digits(a), db = digits(b);
          std::vector<int> sum(n);
          for (int i = 0; i < n; ++i) sum[i] = (da[i] + db[i]) % p;
          add_[a][b] = encode(sum);
          std::vector<int> prod(2 * n - 1, 0);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
          for (int deg = 2 * n - 2; deg >= n; --deg) {
            int coeff = prod[deg];
            if (coeff == 0) continue;
            prod[deg] = 0;
            // x^deg = x^(deg-n) * x^n, and x^n = -reduction(x).
            for (int i = 0; i < n; ++i)
              prod[deg - n + i] =
                  ((prod[deg - n + i] - coeff * ext.reduction[i]) % p + p * p) % p;
          }
          prod.resize(n);
          mul_[a][b] = encode(prod);
        }
      return;
    }
    throw ValidationError("unsupported field order " + std::to_string(q));
  }

  int q() const { return q_; }
  int add(int a, int b) const { return add_[a][b]; }
  int mul(int a, int b) const { return mul_[a][b]; }

private:
  int q_;
  std::vector<std::vector<int>> add_;
  std::vector<std::vector<int>> mul_;
};

namespace detail {

/// Canonical representatives of the projective plane PG(2,q): nonzero triples
/// with first nonzero coordinate 1, in lexicographic order.
inline std::vector<std::array<int, 3>> projective_points(int q) {
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        if (a > 1 || (a == 0 && b > 1) || (a == 0 && b == 0 && c > 1)) continue;
        pts.push_back({a, b, c});
      }
  return pts;
}

}  // namespace detail

/// Points of PG(2,q) as vertices, lines as edges of size q+1, b = c = w = 1.
/// Any two lines meet in exactly one point (asserted on construction); with
/// k = q+1 this family realizes the k-1+1/k integrality gap.
inline BMatchInstance gen_projective_plane(int q) {
  GaloisField gf(q);
  auto pts = detail::projective_points(q);
  const int count = static_cast<int>(pts.size());
  if (count != q * q + q + 1) throw InternalError("projective point count mismatch");
  std::vector<std::vector<int>> edges;
  for (int line = 0; line < count; ++line) {
    std::vector<int> on_line;
    for (int p = 0; p < count; ++p) {
      int dot = gf.add(gf.add(gf.mul(pts[line][0], pts[p][0]), gf.mul(pts[line][1], pts[p][1])),
                       gf.mul(pts[line][2], pts[p][2]));
      if (dot == 0) on_line.push_back(p);
    }
    if (static_cast<int>(on_line.size()) != q + 1)
      throw InternalError("projective line has wrong size");
    edges.push_back(std::move(on_line));
  }
  BMatchInstance inst;
  inst.h = Hypergraph::make(count, std::move(edges));
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      int shared = 0;
      for (int v : inst.h.edge(i))
        if (inst.h.edge_contains(j, v)) ++shared;
      if (shared != 1) throw InternalError("projective lines must meet exactly once");
    }
  inst.b.assign(count, 1);
  inst.c.assign(count, 1);
  inst.w = RatVector::Constant(count, Rational(1));
  return validate(std::move(inst));
}

/// Hypergraphic dual of the affine plane AG(2,q): vertices are the q^2+q
/// affine lines, edges are the q^2 points (each of size q+1). The vertical
/// parallel class is the bipartite witness: every point lies on exactly one
/// vertical line. Realizes the bipartite k-1 gap.
inline BMatchInstance gen_truncated_plane(int q) {
  GaloisField gf(q);
  // Line ids: vertical x = c is id c; slope line y = m x + c is id q + m*q + c.
  const int num_lines = q * q + q;
  const int num_points = q * q;
  std::vector<std::vector<int>> edges;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      std::vector<int> through;
      through.push_back(x);
      for (int m = 0; m < q; ++m) {
        // c = y - m x; subtraction via additive inverse search.
        int mx = gf.mul(m, x);
        int c = -1;
        for (int cand = 0; cand < q; ++cand)
          if (gf.add(mx, cand) == y) c = cand;
        through.push_back(q + m * q + c);
      }
      edges.push_back(std::move(through));
    }
  if (static_cast<int>(edges.size()) != num_points)
    throw InternalError("affine point count mismatch");
  BMatchInstance inst;
  inst.h = Hypergraph::make(num_lines, std::move(edges));
  inst.b.assign(num_lines, 1);
  inst.c.assign(num_points, 1);
  inst.w = RatVector::Constant(num_points, Rational(1));
  std::vector<int> witness(static_cast<std::size_t>(q));
  for (int c = 0; c < q; ++c) witness[static_cast<std::size_t>(c)] = c;
  inst.bipartite_witness = BipartiteWitness{std::move(witness)};
  return validate(std::move(inst));
}

}  // namespace hypermatch
