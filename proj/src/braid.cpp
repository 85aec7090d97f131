#include "confplan/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "confplan/error.hpp"

namespace confplan::braid {

BraidWord::BraidWord(int n, std::vector<int> letters) : n_(n), letters_(std::move(letters)) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "a braid needs at least one strand");
  for (int l : letters_)
    if (l == 0 || std::abs(l) > n - 1)
      throw Error(ErrorCode::IndexOutOfRange, "generator index out of range: " + std::to_string(l));
}

BraidWord BraidWord::parse(int n, std::string_view text) {
  std::vector<int> letters;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> BraidWord {
    throw Error(ErrorCode::ParseError, why + " in \"" + std::string(text) + "\"");
  };
  auto read_int = [&](int& out) {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view num = text.substr(start, pos - start);
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), out);
    return ec == std::errc() && p == num.data() + num.size() && !num.empty();
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '.') {
      ++pos;
      continue;
    }
    if (c != 's' && c != 'S') return fail("expected 's<index>'");
    ++pos;
    int idx = 0;
    if (!read_int(idx) || idx <= 0) return fail("bad generator index");
    int e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      if (!read_int(e)) return fail("bad exponent");
    }
    for (int r = 0; r < std::abs(e); ++r) letters.push_back(e > 0 ? idx : -idx);
  }
  try {
    return BraidWord(n, std::move(letters));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

BraidWord BraidWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& l : out) l = -l;
  return BraidWord(n_, std::move(out));
}

BraidWord BraidWord::power(int e) const {
  const BraidWord base = e < 0 ? inverse() : *this;
  std::vector<int> out;
  for (int r = 0; r < std::abs(e); ++r) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return BraidWord(n_, std::move(out));
}

BraidWord BraidWord::operator*(const BraidWord& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::SizeMismatch, "braid words on different strand counts");
  std::vector<int> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return BraidWord(n_, std::move(out));
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << 's' << std::abs(letters_[i]);
    if (letters_[i] < 0) os << "^-1";
  }
  return os.str();
}

Permutation permutation_of(const BraidWord& b) {
  const int n = b.strands();
  std::vector<int> at(n);  // at[position] = strand
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters()) {
    const int i = std::abs(l) - 1;
    std::swap(at[i], at[i + 1]);
  }
  Permutation perm(n);
  for (int p = 0; p < n; ++p) perm[at[p]] = p;
  return perm;
}

bool is_pure(const BraidWord& b) {
  const auto perm = permutation_of(b);
  for (int s = 0; s < static_cast<int>(perm.size()); ++s)
    if (perm[s] != s) return false;
  return true;
}

LinkingMatrix::LinkingMatrix(int n) : n_(n), v_(n > 1 ? static_cast<std::size_t>(n) * (n - 1) / 2 : 0, 0) {}

std::size_t LinkingMatrix::index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorCode::IndexOutOfRange, "bad strand pair");
  if (i > j) std::swap(i, j);
  // Row-major upper triangle without the diagonal.
  return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

std::int64_t LinkingMatrix::at(int i, int j) const { return v_[index(i, j)]; }
void LinkingMatrix::set(int i, int j, std::int64_t v) { v_[index(i, j)] = v; }

bool LinkingMatrix::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

LinkingMatrix LinkingMatrix::relabeled(const Permutation& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw Error(ErrorCode::SizeMismatch, "permutation size differs");
  LinkingMatrix out(n_);
  for (int p = 0; p < n_; ++p)
    for (int q = p + 1; q < n_; ++q) out.set(p, q, at(perm[p], perm[q]));
  return out;
}

LinkingMatrix LinkingMatrix::operator+(const LinkingMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorCode::SizeMismatch, "linking matrices differ in size");
  LinkingMatrix out = *this;
  for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] += o.v_[i];
  return out;
}

LinkingMatrix LinkingMatrix::operator-() const {
  LinkingMatrix out = *this;
  for (auto& x : out.v_) x = -x;
  return out;
}

std::string LinkingMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) os << (os.tellp() > 0 ? " " : "") << "(" << i + 1 << "," << j + 1 << ")=" << at(i, j);
  return os.str();
}

LinkingMatrix crossing_counts(const BraidWord& b) {
  const int n = b.strands();
  LinkingMatrix m(n);
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters()) {
    const int i = std::abs(l) - 1;
    const int s = at[i], t = at[i + 1];
    m.set(s, t, m.at(s, t) + (l > 0 ? 1 : -1));
    std::swap(at[i], at[i + 1]);
  }
  return m;
}

LinkingMatrix linking_matrix(const BraidWord& b) {
  if (!is_pure(b)) throw Error(ErrorCode::NotPure, "linking numbers need a pure braid");
  LinkingMatrix counts = crossing_counts(b);
  LinkingMatrix out(b.strands());
  for (int i = 0; i < b.strands(); ++i)
    for (int j = i + 1; j < b.strands(); ++j) {
      const auto c = counts.at(i, j);
      if (c % 2 != 0) throw Error(ErrorCode::OddCrossingParity, "odd crossing count in a pure braid");
      out.set(i, j, c / 2);
    }
  return out;
}

bool in_commutator_subgroup(const BraidWord& b) { return linking_matrix(b).is_zero(); }

BraidWord conjugate(const BraidWord& b, const BraidWord& g) {
  if (b.strands() != g.strands()) throw Error(ErrorCode::SizeMismatch, "conjugating words differ in strand count");
  return g * b * g.inverse();
}

BraidWord concentric_generator(int n, int l) {
  if (l < 1 || l > n - 1) throw Error(ErrorCode::IndexOutOfRange, "concentric generator index out of range");
  std::vector<int> w;
  for (int i = l; i <= n - 1; ++i) w.push_back(i);
  for (int i = n - 1; i >= l; --i) w.push_back(i);
  return BraidWord(n, std::move(w));
}

ConjugationImage conjugation_image(const BraidWord& b, const BraidWord& g) {
  const auto base = linking_matrix(b);
  return {linking_matrix(conjugate(b, g)), base.relabeled(permutation_of(g))};
}

bool hub_property(const BraidWord& b, int k) {
  const int n = b.strands();
  if (k < 1 || k > n - 1) throw Error(ErrorCode::IndexOutOfRange, "hub size must lie in [1, n-1]");
  const auto m = linking_matrix(b);
  for (int j = 0; j < n; ++j) {
    int nonzero = 0;
    for (int i = 0; i < n; ++i)
      if (i != j && m.at(i, j) != 0) ++nonzero;
    if (nonzero >= k) return true;
  }
  return false;
}

int abelianization_rank(std::span<const BraidWord> words) {
  if (words.empty()) return 0;
  const int n = words.front().strands();
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& w : words) {
    if (w.strands() != n) throw Error(ErrorCode::SizeMismatch, "words differ in strand count");
    const auto m = linking_matrix(w);
    rows.emplace_back(m.entries().begin(), m.entries().end());
  }
  // Fraction-free elimination with gcd reduction keeps the integers small.
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return r[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    const auto& p = rows[rank];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::int64_t a = p[c], b = rows[r][c];
      std::int64_t g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = rows[r][k] * a - p[k] * b;
        g = std::gcd(g, rows[r][k]);
      }
      if (g > 1)
        for (auto& x : rows[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

BraidWord cluster_orbit_generator(int n, int k, int j) {
  if (k < 1 || j <= k || j > n) throw Error(ErrorCode::IndexOutOfRange, "orbit generator needs 1 <= k < j <= n");
  // Bring strand j next to the cluster, loop around it, and return.
  std::vector<int> approach;
  for (int i = j - 1; i >= k + 1; --i) approach.push_back(i);
  std::vector<int> w = approach;
  for (int i = k; i >= 1; --i) w.push_back(i);
  for (int i = 1; i <= k; ++i) w.push_back(i);
  for (auto it = approach.rbegin(); it != approach.rend(); ++it) w.push_back(-*it);
  return BraidWord(n, std::move(w));
}

BraidWord pure_generator(int n, int i, int j) {
  if (i < 1 || j <= i || j > n) throw Error(ErrorCode::IndexOutOfRange, "pure generator needs 1 <= i < j <= n");
  std::vector<int> w;
  for (int m = j - 1; m > i; --m) w.push_back(m);
  w.push_back(i);
  w.push_back(i);
  for (int m = i + 1; m <= j - 1; ++m) w.push_back(-m);
  return BraidWord(n, std::move(w));
}

std::vector<int> cluster_sizes(int n, int k) {
  if (k < 1 || k > n) throw Error(ErrorCode::IndexOutOfRange, "cluster size must lie in [1, n]");
  const int m = (n - 1) / k;
  std::vector<int> sizes(static_cast<std::size_t>(m), k);
  sizes.push_back(n - m * k);
  return sizes;
}

BraidWord cable(const BraidWord& cluster_word, std::span<const int> widths) {
  if (static_cast<int>(widths.size()) != cluster_word.strands())
    throw Error(ErrorCode::SizeMismatch, "one width per cluster strand required");
  const int total = std::accumulate(widths.begin(), widths.end(), 0);
  std::vector<int> at(widths.begin(), widths.end());  // width of the block at each position
  std::vector<int> out;
  for (int l : cluster_word.letters()) {
    const int i = std::abs(l) - 1;
    const int sign = l > 0 ? 1 : -1;
    const int offset = std::accumulate(at.begin(), at.begin() + i, 0);
    const int p = at[i], q = at[i + 1];
    // Each strand of the left block, rightmost first, passes the right block.
    for (int r = p - 1; r >= 0; --r)
      for (int c = 1; c <= q; ++c) out.push_back(sign * (offset + r + c));
    std::swap(at[i], at[i + 1]);
  }
  return BraidWord(total, std::move(out));
}

BraidWord embed(const BraidWord& w, int n, int offset) {
  if (offset < 0 || offset + w.strands() > n) throw Error(ErrorCode::IndexOutOfRange, "embedding exceeds strands");
  std::vector<int> out;
  for (int l : w.letters()) out.push_back(l > 0 ? l + offset : l - offset);
  return BraidWord(n, std::move(out));
}

}  // namespace confplan::braid
