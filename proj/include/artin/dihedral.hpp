#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/word.hpp"

namespace artin {

/// Normal form in the dihedral Artin group <a,b | prod(a,b,2k) = prod(b,a,2k)>.
///
/// With c = ab the presentation becomes <a,c | a c^k a^-1 = c^k>, so c^k is
/// central and the quotient by <c^k> is Z * Z_k. An element is stored as
/// c^(k*central) times a reduced word in Z * Z_k whose syllables are a^e
/// (e != 0) and c^r (0 < r < k). The a-syllables and c-syllables alternate.
struct DihedralNormalForm {
  struct Piece {
    bool is_a;  // a^exp when true, c^exp otherwise
    std::int64_t exp;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  std::int64_t k = 1;
  std::int64_t central = 0;
  std::vector<Piece> pieces;

  bool is_identity() const { return central == 0 && pieces.empty(); }

  void push_a(std::int64_t e) {
    if (e == 0) return;
    if (!pieces.empty() && pieces.back().is_a) {
      pieces.back().exp += e;
      if (pieces.back().exp == 0) pieces.pop_back();
      return;
    }
    pieces.push_back({true, e});
    if (pieces.size() > length_cap()) fail(ErrorKind::LengthCapExceeded, "dihedral normal form too long");
  }

  void push_c(std::int64_t e) {
    if (e == 0) return;
    std::int64_t r = e;
    bool merge = !pieces.empty() && !pieces.back().is_a;
    if (merge) r += pieces.back().exp;
    std::int64_t q = r >= 0 ? r / k : -((-r + k - 1) / k);
    std::int64_t rem = r - q * k;
    central += q;
    if (merge) {
      if (rem == 0)
        pieces.pop_back();
      else
        pieces.back().exp = rem;
    } else if (rem != 0) {
      pieces.push_back({false, rem});
    }
  }

  friend bool operator==(const DihedralNormalForm&, const DihedralNormalForm&) = default;

  std::string to_string() const {
    std::string out = "c^" + std::to_string(k * central);
    for (const auto& p : pieces) out += std::string(" ") + (p.is_a ? "a^" : "c^") + std::to_string(p.exp);
    return out;
  }
};

/// Normal form of w, a word over the two generators a and b of an edge with
/// label 2k. Letters other than a and b are rejected.
inline DihedralNormalForm dihedral_reduce(std::int64_t k, const Word& w, VertexId a, VertexId b) {
  require(k >= 1, ErrorKind::PreconditionFailed, "dihedral_reduce needs k >= 1");
  DihedralNormalForm nf;
  nf.k = k;
  for (const auto& s : w.syllables()) {
    if (s.gen == a) {
      nf.push_a(s.exp);
    } else if (s.gen == b) {
      // b = a^-1 c and b^-1 = c^-1 a
      for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) {
        if (s.exp > 0) {
          nf.push_a(-1);
          nf.push_c(1);
        } else {
          nf.push_c(-1);
          nf.push_a(1);
        }
      }
    } else {
      fail(ErrorKind::PreconditionFailed, "dihedral_reduce: letter outside the generating pair");
    }
  }
  return nf;
}

/// prod(u, v, m): the alternating word u v u v ... with m letters.
inline Word alternating_product(GraphTag tag, VertexId u, VertexId v, int m) {
  Word w(tag);
  for (int i = 0; i < m; ++i) w.push(i % 2 == 0 ? u : v, 1);
  return w;
}

/// The defining relator prod(u,v,m) prod(v,u,m)^-1.
inline Word artin_relator(GraphTag tag, VertexId u, VertexId v, int m) {
  return alternating_product(tag, u, v, m) * alternating_product(tag, v, u, m).inverse();
}

}  // namespace artin
