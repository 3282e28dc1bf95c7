#ifndef CSMINER_STRUCTIO_HPP
#define CSMINER_STRUCTIO_HPP

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csminer/common.hpp"
#include "csminer/seqio.hpp"

namespace csminer {

/// Partner index per 1-based position (0 = unpaired). partner[0] is unused.
/// Crossing (pseudoknotted) pairs are tolerated on input and flagged;
/// everything produced for scanning is nested.
struct PairTable {
  std::vector<int> partner;  // size length+1, entry 0 unused
  bool pseudoknotted = false;

  PairTable() : partner(1, 0) {}
  explicit PairTable(int length) : partner(length + 1, 0) {}

  int length() const { return static_cast<int>(partner.size()) - 1; }
  bool paired(int i) const { return partner[i] != 0; }

  void set_pair(int i, int j) {
    partner[i] = j;
    partner[j] = i;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= length(); ++i)
      if (partner[i] > i) out.emplace_back(i, partner[i]);
    return out;
  }

  bool symmetric() const {
    for (int i = 1; i <= length(); ++i) {
      int j = partner[i];
      if (j < 0 || j > length() || j == i) return false;
      if (j != 0 && partner[j] != i) return false;
    }
    return true;
  }

  bool has_crossing() const {
    auto ps = pairs();
    for (std::size_t a = 0; a < ps.size(); ++a)
      for (std::size_t b = a + 1; b < ps.size(); ++b) {
        auto [i, j] = ps[a];
        auto [k, l] = ps[b];
        if (i < k && k < j && j < l) return true;
      }
    return false;
  }

  /// Nested copy: pairs that cross an earlier-starting kept pair are dropped.
  PairTable without_crossing() const {
    PairTable out(length());
    std::vector<std::pair<int, int>> kept;
    for (auto [i, j] : pairs()) {
      bool crosses = false;
      for (auto [k, l] : kept)
        if ((k < i && i < l && l < j) || (i < k && k < j && j < l)) {
          crosses = true;
          break;
        }
      if (!crosses) {
        kept.emplace_back(i, j);
        out.set_pair(i, j);
      }
    }
    return out;
  }

  bool operator==(const PairTable&) const = default;
};

struct StockholmAlignment {
  std::vector<std::pair<std::string, std::string>> rows;  // (id, aligned seq)
  std::string ss_cons;
  int column_count = 0;
};

struct CtRecord {
  std::string title;
  NucleotideSequence sequence;  // RNA
  PairTable pairs;
  std::optional<std::vector<long>> origin_coords;  // per-position, 1-based

  bool operator==(const CtRecord&) const = default;
};

inline bool is_alignment_gap(char c) {
  return c == '-' || c == '.' || c == '_' || c == '~';
}

/// Bracket matching over the WUSS subset: openers (<[{ close with )>]},
/// .,_:-~ are unpaired. Families are matched independently and merged;
/// the merged table must be nested.
inline PairTable parse_wuss(const std::string& ss) {
  static const std::string open = "(<[{";
  static const std::string close = ")>]}";
  static const std::string unpaired = ".,_:-~";
  PairTable pt(static_cast<int>(ss.size()));
  std::vector<std::vector<int>> stacks(4);
  for (int pos = 1; pos <= static_cast<int>(ss.size()); ++pos) {
    char c = ss[pos - 1];
    std::size_t f;
    if ((f = open.find(c)) != std::string::npos) {
      stacks[f].push_back(pos);
    } else if ((f = close.find(c)) != std::string::npos) {
      if (stacks[f].empty())
        throw ParseError(std::string("unbalanced '") + c + "' at column " +
                         std::to_string(pos));
      pt.set_pair(stacks[f].back(), pos);
      stacks[f].pop_back();
    } else if (unpaired.find(c) == std::string::npos) {
      throw ParseError(std::string("unsupported structure symbol '") + c +
                       "' at column " + std::to_string(pos));
    }
  }
  for (std::size_t f = 0; f < 4; ++f)
    if (!stacks[f].empty())
      throw ParseError(std::string("unbalanced '") + open[f] + "' at column " +
                       std::to_string(stacks[f].back()));
  if (pt.has_crossing())
    throw ParseError("crossing pairs across bracket families (pseudoknots "
                     "unsupported in consensus structure)");
  return pt;
}

/// Nested-only dot-bracket rendering with ( ) . only.
inline std::string to_dot_bracket(const PairTable& pt) {
  if (pt.has_crossing())
    throw ParseError("cannot render pseudoknotted table as dot-bracket");
  std::string out(pt.length(), '.');
  for (auto [i, j] : pt.pairs()) {
    out[i - 1] = '(';
    out[j - 1] = ')';
  }
  return out;
}

/// 6-column CT reader: header "N title", then N rows
/// "index base prev next partner original_index". Crossing pairs are
/// tolerated and flagged as pseudoknotted.
inline CtRecord parse_ct(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError("empty CT input");
  std::istringstream hs(line);
  long n = 0;
  if (!(hs >> n) || n < 0) throw ParseError("bad CT header", line_no);
  std::string title;
  std::getline(hs, title);
  std::size_t start = title.find_first_not_of(" \t");
  title = start == std::string::npos ? std::string() : title.substr(start);

  CtRecord rec;
  rec.title = title;
  rec.pairs = PairTable(static_cast<int>(n));
  rec.sequence.alphabet = Alphabet::RNA;
  rec.sequence.id = title.empty() ? "ct" : title.substr(0, title.find(' '));
  rec.sequence.description = title;
  std::vector<long> coords;
  std::vector<std::size_t> row_line(n + 1, 0);

  for (long i = 1; i <= n; ++i) {
    if (!next_content_line())
      throw ParseError("CT count mismatch: expected " + std::to_string(n) +
                           " rows, got " + std::to_string(i - 1),
                       line_no);
    std::istringstream rs(line);
    long idx, prev, next, partner, orig;
    std::string base;
    if (!(rs >> idx >> base >> prev >> next >> partner >> orig))
      throw ParseError("malformed CT row", line_no);
    if (idx != i) throw ParseError("CT index gap: expected " +
                                       std::to_string(i) + ", got " +
                                       std::to_string(idx),
                                   line_no);
    if (base.size() != 1) throw ParseError("bad residue field", line_no);
    char c = static_cast<char>(
        std::toupper(static_cast<unsigned char>(base[0])));
    if (c == 'T') c = 'U';
    if (!detail::legal_symbol(c, Alphabet::RNA))
      throw ParseError(std::string("illegal symbol '") + base[0] + "'",
                       line_no);
    rec.sequence.residues.push_back(c);
    if (partner < 0 || partner > n)
      throw ParseError("partner out of range", line_no);
    if (partner == i) throw ParseError("self-paired position", line_no);
    rec.pairs.partner[i] = static_cast<int>(partner);
    coords.push_back(orig);
    row_line[i] = line_no;
  }
  if (next_content_line())
    throw ParseError("CT count mismatch: trailing content", line_no);

  for (long i = 1; i <= n; ++i) {
    long j = rec.pairs.partner[i];
    if (j != 0 && rec.pairs.partner[j] != i)
      throw ParseError("asymmetric pair", row_line[std::max(i, j)]);
  }
  rec.pairs.pseudoknotted = rec.pairs.has_crossing();

  bool trivial = true;
  for (long i = 1; i <= n; ++i)
    if (coords[i - 1] != i) trivial = false;
  if (!trivial) rec.origin_coords = std::move(coords);
  return rec;
}

inline CtRecord parse_ct(const std::string& text) {
  std::istringstream in(text);
  return parse_ct(in);
}

/// Single-space 6-column CT with trailing newline. Column 6 carries
/// origin coordinates when present, otherwise the 1-based index.
inline std::string write_ct(const CtRecord& rec) {
  std::ostringstream out;
  int n = rec.pairs.length();
  out << n << ' ' << rec.title << '\n';
  for (int i = 1; i <= n; ++i) {
    long orig = rec.origin_coords ? (*rec.origin_coords)[i - 1] : i;
    out << i << ' ' << rec.sequence.residues[i - 1] << ' ' << i - 1 << ' '
        << (i == n ? 0 : i + 1) << ' ' << rec.pairs.partner[i] << ' ' << orig
        << '\n';
  }
  return out.str();
}

/// Stockholm 1.0 subset: "# STOCKHOLM 1.0" magic, interleaved sequence
/// blocks concatenated by id, #=GC SS_cons concatenated, #=GF ignored,
/// terminated by "//". A row id first appearing after block one is a
/// ragged alignment.
inline StockholmAlignment parse_stockholm(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool magic_seen = false;
  StockholmAlignment aln;
  std::map<std::string, std::size_t> row_index;
  int block = 0;
  bool in_block = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!magic_seen) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (line.rfind("# STOCKHOLM", 0) != 0)
        throw ParseError("missing '# STOCKHOLM 1.0' magic line", line_no);
      magic_seen = true;
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (in_block) ++block;
      in_block = false;
      continue;
    }
    if (line == "//") break;
    if (line.rfind("#=GC", 0) == 0) {
      std::istringstream ls(line);
      std::string tag, feature, text;
      ls >> tag >> feature >> text;
      if (feature == "SS_cons") {
        if (text.empty()) throw ParseError("empty SS_cons line", line_no);
        aln.ss_cons += text;
        in_block = true;
      }
      continue;
    }
    if (line[0] == '#') continue;  // #=GF and other markup ignored
    std::istringstream ls(line);
    std::string id, residues;
    ls >> id >> residues;
    if (id.empty() || residues.empty())
      throw ParseError("malformed alignment row", line_no);
    auto it = row_index.find(id);
    if (it == row_index.end()) {
      if (block > 0)
        throw ParseError("ragged alignment: new row id '" + id +
                             "' after first block",
                         line_no);
      row_index[id] = aln.rows.size();
      aln.rows.emplace_back(id, residues);
    } else {
      aln.rows[it->second].second += residues;
    }
    in_block = true;
  }

  if (!magic_seen) throw ParseError("missing '# STOCKHOLM 1.0' magic line");
  if (aln.rows.empty()) throw ParseError("Stockholm alignment has no rows");
  if (aln.ss_cons.empty())
    throw ParseError("Stockholm alignment has no #=GC SS_cons");
  aln.column_count = static_cast<int>(aln.rows.front().second.size());
  for (const auto& [id, seq] : aln.rows)
    if (static_cast<int>(seq.size()) != aln.column_count)
      throw ParseError("ragged alignment: row '" + id + "' has width " +
                       std::to_string(seq.size()) + ", expected " +
                       std::to_string(aln.column_count));
  if (static_cast<int>(aln.ss_cons.size()) != aln.column_count)
    throw ParseError("ragged alignment: SS_cons width " +
                     std::to_string(aln.ss_cons.size()) + ", expected " +
                     std::to_string(aln.column_count));
  return aln;
}

inline StockholmAlignment parse_stockholm(const std::string& text) {
  std::istringstream in(text);
  return parse_stockholm(in);
}

}  // namespace csminer

#endif  // CSMINER_STRUCTIO_HPP
