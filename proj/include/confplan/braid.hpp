#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/// Artin braid words and the abelianization of the pure braid group.
///
/// Conventions: letter +i is sigma_i, a counterclockwise half twist of the
/// strands at positions i and i+1 (1-based); -i is its inverse. Strands are
/// named by their starting position and threaded through the word. The
/// linking number psi_{i,j} is half the signed number of letters at which
/// strands i and j cross, so psi(sigma_1^2) = 1.
namespace confplan::braid {

class BraidWord {
 public:
  BraidWord() = default;
  /// Throws IndexOutOfRange unless 1 <= |letter| <= n - 1.
  BraidWord(int n, std::vector<int> letters);

  /// Parses "s1 s2^-1 s3^2"; tokens may be separated by spaces or commas.
  static BraidWord parse(int n, std::string_view text);

  int strands() const { return n_; }
  std::span<const int> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }

  BraidWord inverse() const;
  BraidWord power(int e) const;
  /// Concatenation (this word first).
  BraidWord operator*(const BraidWord& other) const;

  std::string to_string() const;
  bool operator==(const BraidWord&) const = default;

 private:
  int n_ = 1;
  std::vector<int> letters_;
};

/// perm[s] = final position of the strand starting at position s (0-based).
using Permutation = std::vector<int>;

Permutation permutation_of(const BraidWord& b);
bool is_pure(const BraidWord& b);

/// Symmetric integer table over unordered strand pairs (0-based indices).
class LinkingMatrix {
 public:
  explicit LinkingMatrix(int n = 0);

  int strands() const { return n_; }
  std::int64_t at(int i, int j) const;
  void set(int i, int j, std::int64_t v);
  /// Entries in the order (0,1), (0,2), ..., (n-2,n-1).
  std::span<const std::int64_t> entries() const { return v_; }

  bool is_zero() const;
  /// M'(p, q) = M(perm[p], perm[q]).
  LinkingMatrix relabeled(const Permutation& perm) const;

  LinkingMatrix operator+(const LinkingMatrix& o) const;
  LinkingMatrix operator-() const;
  bool operator==(const LinkingMatrix&) const = default;

  /// One line: "(1,2)=1 (1,3)=0 (2,3)=0" with 1-based strand names.
  std::string to_string() const;

 private:
  std::size_t index(int i, int j) const;
  int n_;
  std::vector<std::int64_t> v_;
};

/// Signed crossing counts per strand pair (not halved); defined for any word.
LinkingMatrix crossing_counts(const BraidWord& b);

/// Throws NotPure for non-pure words.
LinkingMatrix linking_matrix(const BraidWord& b);

bool in_commutator_subgroup(const BraidWord& b);

/// g b g^-1. Throws SizeMismatch if the strand counts differ.
BraidWord conjugate(const BraidWord& b, const BraidWord& g);

/// sigma_l ... sigma_{n-1} sigma_{n-1} ... sigma_l: strand l encircles the
/// strands l+1..n. Throws IndexOutOfRange unless 1 <= l <= n - 1.
BraidWord concentric_generator(int n, int l);

struct ConjugationImage {
  LinkingMatrix direct;     // linking_matrix(g b g^-1)
  LinkingMatrix relabeled;  // linking_matrix(b) relabeled by permutation_of(g)

  bool agree() const { return direct == relabeled; }
};

ConjugationImage conjugation_image(const BraidWord& b, const BraidWord& g);

/// Some strand links non-trivially with at least k other strands.
bool hub_property(const BraidWord& b, int k);

/// Rank over Q of the linking vectors.
int abelianization_rank(std::span<const BraidWord> words);

// Realizations used by the conjugation-invariant separation witnesses.

/// Strand j (1-based, j > k) makes one counterclockwise orbit around the
/// cluster of strands 1..k and nothing else.
BraidWord cluster_orbit_generator(int n, int k, int j);

/// Standard pure generator A_{ij} (1 <= i < j <= n): strand j encircles strand i.
BraidWord pure_generator(int n, int i, int j);

/// Cluster sizes for n = m k + r with 1 <= r <= k: m clusters of k, then r.
std::vector<int> cluster_sizes(int n, int k);

/// Replaces each strand of `cluster_word` by a parallel block of widths[c]
/// strands (c = starting position of the block). Letters become block
/// crossings; strands of different blocks cross exactly once per letter.
BraidWord cable(const BraidWord& cluster_word, std::span<const int> widths);

/// Shifts a word on `w.strands()` strands to act on positions
/// offset+1 .. offset+w.strands() of an n-strand braid.
BraidWord embed(const BraidWord& w, int n, int offset);

}  // namespace confplan::braid
