#ifndef CSMINER_JUNCTION_HPP
#define CSMINER_JUNCTION_HPP

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csminer/common.hpp"
#include "csminer/structio.hpp"

namespace csminer {

/// Maximal run of strictly stacked base pairs: (i+1, j-1) follows (i, j).
struct Helix {
  std::vector<std::pair<int, int>> pairs;

  int length() const { return static_cast<int>(pairs.size()); }
  std::pair<int, int> outer() const { return pairs.front(); }
  std::pair<int, int> inner() const { return pairs.back(); }
  bool operator==(const Helix&) const = default;
};

/// Contiguous unpaired positions (possibly empty) with their residues.
struct LoopRegion {
  std::vector<int> positions;
  std::string bases;

  int size() const { return static_cast<int>(positions.size()); }
  bool operator==(const LoopRegion&) const = default;
};

enum class JunctionFamily { A, B, C };

inline char family_char(JunctionFamily f) {
  switch (f) {
    case JunctionFamily::A: return 'A';
    case JunctionFamily::B: return 'B';
    default: return 'C';
  }
}

/// One base pair with 1-based positions; five_prime is the lower position.
struct JunctionPair {
  int five_prime_pos = 0;
  int three_prime_pos = 0;
  char five_prime_base = 'N';
  char three_prime_base = 'N';
  bool operator==(const JunctionPair&) const = default;
};

/// A multibranch loop with exactly three emanating helices. H1 is the
/// enclosing helix (its pairs hold the bases closest to both the 5' and 3'
/// ends of the segment), H2 the next helix downstream, H3 the third.
/// terminal = the pair adjacent to the junction loop, penultimate = the
/// next stacked pair away from it. The six S coordinates delimit the three
/// subsequences, each at least 4 bases: first two bases in one helix, last
/// two in the next.
struct ThreeWayJunction {
  Helix h1, h2, h3;
  JunctionPair h1_terminal, h1_penultimate;
  JunctionPair h2_terminal, h2_penultimate;
  JunctionPair h3_terminal, h3_penultimate;
  LoopRegion j12, j23, j31;
  int s1id5 = 0, s1id3 = 0, s2id5 = 0, s2id3 = 0, s3id5 = 0, s3id3 = 0;
  std::string strseq1, strseq2, strseq3;
  JunctionFamily family = JunctionFamily::B;

  bool operator==(const ThreeWayJunction&) const = default;
};

struct JunctionScan {
  std::vector<ThreeWayJunction> junctions;
  int higher_order_loops = 0;  // loops with > 3 emanating helices
  std::vector<std::string> warnings;
};

/// |J31| < |J23| -> A, equal -> B, |J31| > |J23| -> C.
inline JunctionFamily classify_family(int j31_count, int j23_count) {
  if (j31_count < j23_count) return JunctionFamily::A;
  if (j31_count == j23_count) return JunctionFamily::B;
  return JunctionFamily::C;
}

inline JunctionFamily classify_family(const ThreeWayJunction& j) {
  return classify_family(j.j31.size(), j.j23.size());
}

/// All maximal stacked runs sorted by 5' start. Any unpaired position on
/// either strand (bulge or internal loop) terminates a helix.
inline std::vector<Helix> find_helices(const PairTable& pt) {
  std::vector<Helix> out;
  int n = pt.length();
  std::vector<bool> used(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    int j = pt.partner[i];
    if (j <= i || used[i]) continue;
    Helix h;
    int a = i, b = j;
    while (a < b && pt.partner[a] == b) {
      h.pairs.emplace_back(a, b);
      used[a] = true;
      used[b] = true;
      ++a;
      --b;
    }
    out.push_back(std::move(h));
  }
  return out;
}

namespace detail {

inline JunctionPair make_pair(int i, int j, std::string_view residues) {
  return {i, j, residues[i - 1], residues[j - 1]};
}

inline LoopRegion make_loop(int from, int to, std::string_view residues) {
  LoopRegion loop;
  for (int p = from; p <= to; ++p) {
    loop.positions.push_back(p);
    loop.bases.push_back(residues[p - 1]);
  }
  return loop;
}

}  // namespace detail

/// Walks every loop closed by a helix's inner pair and emits a
/// ThreeWayJunction for each loop with exactly two child helices. Loops
/// with more children are counted as higher-order; arms with fewer than
/// two stacked pairs leave the penultimate pair undefined, so those
/// junctions are skipped with a warning. Crossing pairs are dropped first
/// when the table is flagged pseudoknotted.
inline JunctionScan scan_three_way_junctions(const PairTable& table,
                                             std::string_view residues) {
  if (static_cast<int>(residues.size()) != table.length())
    throw ParseError("residue string length does not match pair table");
  const PairTable nested =
      table.pseudoknotted ? table.without_crossing() : table;
  const PairTable& pt = nested;

  JunctionScan result;
  auto helices = find_helices(pt);

  // helix lookup by outer 5' position
  std::vector<int> helix_at(pt.length() + 1, -1);
  for (std::size_t h = 0; h < helices.size(); ++h)
    helix_at[helices[h].outer().first] = static_cast<int>(h);

  for (const Helix& encl : helices) {
    auto [a, b] = encl.inner();
    // children directly nested under the inner pair
    std::vector<int> children;
    int p = a + 1;
    bool closes_loop = true;
    while (p < b) {
      int q = pt.partner[p];
      if (q == 0) {
        ++p;
      } else {
        children.push_back(helix_at[p]);
        p = q + 1;
      }
    }
    if (!closes_loop) continue;
    if (static_cast<int>(children.size()) > 2) {
      ++result.higher_order_loops;
      continue;
    }
    if (children.size() != 2) continue;

    const Helix& h2 = helices[children[0]];
    const Helix& h3 = helices[children[1]];
    if (encl.length() < 2 || h2.length() < 2 || h3.length() < 2) {
      result.warnings.push_back(
          "junction at " + std::to_string(a) + "-" + std::to_string(b) +
          " skipped: arm with a single stacked pair (penultimate pair "
          "undefined)");
      continue;
    }

    auto [k1, l1] = h2.outer();
    auto [k2, l2] = h3.outer();

    ThreeWayJunction j;
    j.h1 = encl;
    j.h2 = h2;
    j.h3 = h3;
    j.h1_terminal = detail::make_pair(a, b, residues);
    j.h1_penultimate = detail::make_pair(a - 1, b + 1, residues);
    j.h2_terminal = detail::make_pair(k1, l1, residues);
    j.h2_penultimate = detail::make_pair(k1 + 1, l1 - 1, residues);
    j.h3_terminal = detail::make_pair(k2, l2, residues);
    j.h3_penultimate = detail::make_pair(k2 + 1, l2 - 1, residues);
    j.j12 = detail::make_loop(a + 1, k1 - 1, residues);
    j.j23 = detail::make_loop(l1 + 1, k2 - 1, residues);
    j.j31 = detail::make_loop(l2 + 1, b - 1, residues);
    j.s1id5 = a - 1;
    j.s1id3 = k1 + 1;
    j.s2id5 = l1 - 1;
    j.s2id3 = k2 + 1;
    j.s3id5 = l2 - 1;
    j.s3id3 = b + 1;
    j.strseq1 = std::string(residues.substr(j.s1id5 - 1, j.s1id3 - j.s1id5 + 1));
    j.strseq2 = std::string(residues.substr(j.s2id5 - 1, j.s2id3 - j.s2id5 + 1));
    j.strseq3 = std::string(residues.substr(j.s3id5 - 1, j.s3id3 - j.s3id5 + 1));
    j.family = classify_family(j);
    result.junctions.push_back(std::move(j));
  }
  return result;
}

inline std::vector<ThreeWayJunction> find_three_way_junctions(
    const PairTable& pt, std::string_view residues) {
  return scan_three_way_junctions(pt, residues).junctions;
}

inline std::vector<ThreeWayJunction> find_three_way_junctions(
    const CtRecord& rec) {
  return find_three_way_junctions(rec.pairs, rec.sequence.residues);
}

/// Rebuilds a junction from dataset coordinates and subsequences alone:
/// terminal and penultimate pairs come from the first two / last two bases
/// of each subsequence, loop regions are the interior bases.
inline ThreeWayJunction junction_from_dataset_row(
    const std::array<int, 6>& coords, const std::string& strseq1,
    const std::string& strseq2, const std::string& strseq3) {
  const auto [s1id5, s1id3, s2id5, s2id3, s3id5, s3id3] =
      std::array<int, 6>(coords);
  const std::array<const std::string*, 3> seqs{&strseq1, &strseq2, &strseq3};
  const std::array<std::pair<int, int>, 3> spans{
      std::pair{s1id5, s1id3}, {s2id5, s2id3}, {s3id5, s3id3}};
  for (int s = 0; s < 3; ++s) {
    if (seqs[s]->size() < 4)
      throw ParseError("subsequence " + std::to_string(s + 1) +
                       " shorter than 4 bases");
    int span = spans[s].second - spans[s].first + 1;
    if (span != static_cast<int>(seqs[s]->size()))
      throw ParseError("subsequence " + std::to_string(s + 1) +
                       " length does not match its coordinates");
  }
  if (!(s1id5 < s1id3 && s1id3 < s2id5 && s2id5 < s2id3 && s2id3 < s3id5 &&
        s3id5 < s3id3))
    throw ParseError("subsequence coordinates not strictly ascending");

  auto pair_of = [](char five, char three, int fp, int tp) {
    return JunctionPair{fp, tp, five, three};
  };
  auto interior = [](const std::string& s, int start_pos) {
    LoopRegion loop;
    for (std::size_t k = 2; k + 2 < s.size(); ++k) {
      loop.positions.push_back(start_pos + static_cast<int>(k));
      loop.bases.push_back(s[k]);
    }
    return loop;
  };

  ThreeWayJunction j;
  j.s1id5 = s1id5;
  j.s1id3 = s1id3;
  j.s2id5 = s2id5;
  j.s2id3 = s2id3;
  j.s3id5 = s3id5;
  j.s3id3 = s3id3;
  j.strseq1 = strseq1;
  j.strseq2 = strseq2;
  j.strseq3 = strseq3;

  // H1: first two of strseq1 pair with last two of strseq3, outer first.
  j.h1_penultimate = pair_of(strseq1[0], strseq3.back(), s1id5, s3id3);
  j.h1_terminal =
      pair_of(strseq1[1], strseq3[strseq3.size() - 2], s1id5 + 1, s3id3 - 1);
  // H2: last two of strseq1 pair with first two of strseq2.
  j.h2_terminal =
      pair_of(strseq1[strseq1.size() - 2], strseq2[1], s1id3 - 1, s2id5 + 1);
  j.h2_penultimate = pair_of(strseq1.back(), strseq2[0], s1id3, s2id5);
  // H3: last two of strseq2 pair with first two of strseq3.
  j.h3_terminal =
      pair_of(strseq2[strseq2.size() - 2], strseq3[1], s2id3 - 1, s3id5 + 1);
  j.h3_penultimate = pair_of(strseq2.back(), strseq3[0], s2id3, s3id5);

  j.h1.pairs = {{j.h1_penultimate.five_prime_pos, j.h1_penultimate.three_prime_pos},
                {j.h1_terminal.five_prime_pos, j.h1_terminal.three_prime_pos}};
  j.h2.pairs = {{j.h2_terminal.five_prime_pos, j.h2_terminal.three_prime_pos},
                {j.h2_penultimate.five_prime_pos, j.h2_penultimate.three_prime_pos}};
  j.h3.pairs = {{j.h3_terminal.five_prime_pos, j.h3_terminal.three_prime_pos},
                {j.h3_penultimate.five_prime_pos, j.h3_penultimate.three_prime_pos}};

  j.j12 = interior(strseq1, s1id5);
  j.j23 = interior(strseq2, s2id5);
  j.j31 = interior(strseq3, s3id5);
  j.family = classify_family(j);
  return j;
}

}  // namespace csminer

#endif  // CSMINER_JUNCTION_HPP
