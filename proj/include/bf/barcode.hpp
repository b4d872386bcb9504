#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bf/error.hpp"
#include "bf/format.hpp"

namespace bf {

struct Bar {
  double birth = 0.0;
  double death = 0.0;

  friend auto operator<=>(const Bar&, const Bar&) = default;

  // Open-interval containment: (birth, death) strictly inside `outer`.
  bool strictly_inside(const Bar& outer) const { return outer.birth < birth && death < outer.death; }
};

// Finite multiset of bars, stored sorted by (birth, death).
//
// Bars with birth == death are accepted: they arise from zero-length edges in
// binarized reconstructions. Such barcodes are never strict.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {
    for (const Bar& b : bars_) {
      if (!(b.birth <= b.death)) {
        throw InvalidArgument("bar (" + format_exact(b.birth) + ", " + format_exact(b.death) + ") dies before birth");
      }
    }
    std::sort(bars_.begin(), bars_.end());
  }

  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }
  std::span<const Bar> bars() const { return bars_; }
  const Bar& operator[](std::size_t i) const { return bars_[i]; }

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<Bar> bars_;
};

// Strict barcode: bar 0 strictly contains all others, births pairwise
// distinct, deaths pairwise distinct. Bars indexed 0..n by increasing birth.
class StrictBarcode {
 public:
  std::size_t size() const { return bars_.size(); }
  // Number of non-containing bars.
  std::size_t n() const { return bars_.size() - 1; }
  std::span<const Bar> bars() const { return bars_; }
  const Bar& operator[](std::size_t i) const { return bars_[i]; }

  Barcode barcode() const { return Barcode(bars_); }

  friend bool operator==(const StrictBarcode&, const StrictBarcode&) = default;

 private:
  friend StrictBarcode make_strict(const Barcode&);
  explicit StrictBarcode(std::vector<Bar> bars) : bars_(std::move(bars)) {}
  std::vector<Bar> bars_;
};

inline StrictBarcode make_strict(const Barcode& barcode) {
  if (barcode.empty()) throw NotStrict("empty barcode");
  std::vector<Bar> bars(barcode.bars().begin(), barcode.bars().end());
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) { return a.birth < b.birth; });
  for (std::size_t i = 1; i < bars.size(); ++i) {
    if (bars[i].birth == bars[i - 1].birth) throw NotStrict("tied births at " + format_exact(bars[i].birth));
  }
  std::vector<double> deaths;
  deaths.reserve(bars.size());
  for (const Bar& b : bars) deaths.push_back(b.death);
  std::sort(deaths.begin(), deaths.end());
  for (std::size_t i = 1; i < deaths.size(); ++i) {
    if (deaths[i] == deaths[i - 1]) throw NotStrict("tied deaths at " + format_exact(deaths[i]));
  }
  for (std::size_t i = 0; i < bars.size(); ++i) {
    if (!(bars[i].birth < bars[i].death)) throw NotStrict("degenerate bar with birth == death");
  }
  for (std::size_t i = 1; i < bars.size(); ++i) {
    if (!bars[i].strictly_inside(bars[0])) {
      throw NotStrict("bar " + std::to_string(i) + " is not contained in the first-born bar");
    }
  }
  return StrictBarcode(std::move(bars));
}

// Death-order class of a strict barcode with n+1 bars, as an element of S_n.
//
// sequence[k-1] = i_k, the bar with the k-th largest death among bars 1..n.
// sigma[i-1] = #{ j in 1..n : d_j <= d_i }, so sigma(i_k) = n + 1 - k.
struct BarcodeClass {
  std::vector<int> sequence;
  std::vector<int> sigma;

  std::size_t n() const { return sequence.size(); }

  static BarcodeClass from_sequence(std::vector<int> seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> sigma(seq.size(), 0);
    for (int k = 1; k <= n; ++k) {
      const int bar = seq[k - 1];
      if (bar < 1 || bar > n || sigma[bar - 1] != 0) throw InvalidArgument("class sequence is not a permutation of 1..n");
      sigma[bar - 1] = n + 1 - k;
    }
    return BarcodeClass{std::move(seq), std::move(sigma)};
  }

  friend bool operator==(const BarcodeClass& a, const BarcodeClass& b) { return a.sequence == b.sequence; }
};

inline std::string to_string(const BarcodeClass& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.sequence.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(c.sequence[k]);
  }
  return s + ")";
}

inline BarcodeClass barcode_class(const StrictBarcode& b) {
  std::vector<int> seq(b.n());
  std::iota(seq.begin(), seq.end(), 1);
  std::sort(seq.begin(), seq.end(), [&](int i, int j) { return b[i].death > b[j].death; });
  return BarcodeClass::from_sequence(std::move(seq));
}

inline bool equivalent(const StrictBarcode& a, const StrictBarcode& b) {
  return a.size() == b.size() && barcode_class(a) == barcode_class(b);
}

struct DiagramPoint {
  double x;  // death
  double y;  // birth
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

inline std::vector<DiagramPoint> persistence_diagram(const Barcode& b) {
  std::vector<DiagramPoint> pd;
  pd.reserve(b.size());
  for (const Bar& bar : b.bars()) pd.push_back({bar.death, bar.birth});
  return pd;
}

inline void write_diagram_csv(std::ostream& out, std::span<const DiagramPoint> pd) {
  out << "death,birth\n";
  for (const auto& p : pd) out << format_exact(p.x) << ',' << format_exact(p.y) << '\n';
}

// ---- text format: one "birth death" pair per line, '#' comments ----------

inline Barcode parse_barcode(std::istream& in) {
  std::vector<Bar> bars;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto fields = split_ws(strip_comment(raw));
    if (fields.empty()) continue;
    Bar bar;
    if (fields.size() != 2 || !parse_double(fields[0], bar.birth) || !parse_double(fields[1], bar.death)) {
      throw ParseError("expected 'birth death', got '" + raw + "'", lineno);
    }
    if (!(bar.birth <= bar.death)) throw ParseError("bar dies before it is born", lineno);
    bars.push_back(bar);
  }
  return Barcode(std::move(bars));
}

inline Barcode parse_barcode(const std::string& text) {
  std::istringstream in(text);
  return parse_barcode(in);
}

inline void write_barcode(std::ostream& out, const Barcode& b) {
  for (const Bar& bar : b.bars()) out << format_exact(bar.birth) << ' ' << format_exact(bar.death) << '\n';
}

inline std::string to_text(const Barcode& b) {
  std::ostringstream out;
  write_barcode(out, b);
  return out.str();
}

}  // namespace bf
