#ifndef CSMINER_SEQIO_HPP
#define CSMINER_SEQIO_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csminer/common.hpp"

namespace csminer {

enum class Alphabet { DNA, RNA };

enum class Strand { PLUS, MINUS };

inline char strand_char(Strand s) { return s == Strand::PLUS ? '+' : '-'; }

/// A named nucleotide sequence. Residues are uppercase symbols over
/// {A,C,G,U,T,N}; U never appears in DNA, T never in RNA.
struct NucleotideSequence {
  std::string id;           // header up to first whitespace
  std::string description;  // full header text
  std::string residues;
  Alphabet alphabet = Alphabet::DNA;

  std::size_t size() const { return residues.size(); }
  bool operator==(const NucleotideSequence&) const = default;
};

/// 1-based closed interval on a named target. Minus-strand intervals are
/// stored and reported with start >= end (descending coordinates).
struct GenomicInterval {
  std::string target_id;
  long start = 0;
  long end = 0;
  Strand strand = Strand::PLUS;

  long length() const { return (start <= end ? end - start : start - end) + 1; }
  bool operator==(const GenomicInterval&) const = default;
};

namespace detail {

inline bool legal_symbol(char c, Alphabet a) {
  switch (c) {
    case 'A':
    case 'C':
    case 'G':
    case 'N':
      return true;
    case 'U':
      return a == Alphabet::RNA;
    case 'T':
      return a == Alphabet::DNA;
    default:
      return false;
  }
}

inline char complement(char c, Alphabet a) {
  switch (c) {
    case 'A':
      return a == Alphabet::DNA ? 'T' : 'U';
    case 'T':
    case 'U':
      return 'A';
    case 'C':
      return 'G';
    case 'G':
      return 'C';
    default:
      return 'N';
  }
}

}  // namespace detail

/// Reads FASTA records. Sequence lines may wrap; blank lines are ignored;
/// residues are uppercased. The alphabet of a record is inferred: any U
/// makes it RNA, otherwise DNA (a record mixing T and U is rejected).
inline std::vector<NucleotideSequence> parse_fasta(std::istream& in) {
  std::vector<NucleotideSequence> records;
  std::string line;
  std::size_t line_no = 0;
  bool have_record = false;
  std::string header;
  std::string residues;
  std::vector<std::size_t> record_lines;  // header line of each record

  auto flush = [&]() {
    NucleotideSequence seq;
    seq.description = header;
    std::istringstream hs(header);
    hs >> seq.id;
    if (seq.id.empty())
      throw ParseError("empty sequence id", record_lines.back());
    bool has_u = residues.find('U') != std::string::npos;
    bool has_t = residues.find('T') != std::string::npos;
    if (has_u && has_t)
      throw ParseError("sequence mixes T and U: " + seq.id,
                       record_lines.back());
    seq.alphabet = has_u ? Alphabet::RNA : Alphabet::DNA;
    seq.residues = std::move(residues);
    residues.clear();
    records.push_back(std::move(seq));
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      if (have_record) flush();
      header = line.substr(1);
      record_lines.push_back(line_no);
      have_record = true;
      continue;
    }
    if (!have_record)
      throw ParseError("sequence data before any FASTA header", line_no);
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      switch (u) {
        case 'A':
        case 'C':
        case 'G':
        case 'T':
        case 'U':
        case 'N':
          residues.push_back(u);
          break;
        default:
          throw ParseError(std::string("illegal symbol '") + c + "'", line_no);
      }
    }
  }
  if (have_record) flush();
  if (records.empty()) throw ParseError("empty FASTA input");
  return records;
}

inline std::vector<NucleotideSequence> parse_fasta(const std::string& text) {
  std::istringstream in(text);
  return parse_fasta(in);
}

inline void write_fasta(std::ostream& out, const NucleotideSequence& seq,
                        std::size_t width = 60) {
  out << '>' << (seq.description.empty() ? seq.id : seq.description) << '\n';
  for (std::size_t i = 0; i < seq.residues.size(); i += width)
    out << seq.residues.substr(i, width) << '\n';
  if (seq.residues.empty()) out << '\n';
}

inline NucleotideSequence reverse_complement(const NucleotideSequence& seq) {
  NucleotideSequence out = seq;
  out.residues.assign(seq.residues.rbegin(), seq.residues.rend());
  for (char& c : out.residues) c = detail::complement(c, seq.alphabet);
  return out;
}

inline NucleotideSequence transcribe(const NucleotideSequence& seq) {
  if (seq.alphabet == Alphabet::RNA)
    throw ParseError("transcribe: sequence is already RNA: " + seq.id);
  NucleotideSequence out = seq;
  std::replace(out.residues.begin(), out.residues.end(), 'T', 'U');
  out.alphabet = Alphabet::RNA;
  return out;
}

/// Integer GC percentage, rounded to nearest with ties up. N counts in the
/// denominator only.
inline int gc_percent(const NucleotideSequence& seq) {
  if (seq.residues.empty())
    throw ParseError("gc_percent: empty sequence: " + seq.id);
  std::size_t gc = 0;
  for (char c : seq.residues)
    if (c == 'G' || c == 'C') ++gc;
  double pct = 100.0 * static_cast<double>(gc) /
               static_cast<double>(seq.residues.size());
  return static_cast<int>(std::floor(pct + 0.5));
}

}  // namespace csminer

#endif  // CSMINER_SEQIO_HPP
