#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace pstforge {

/// Permutation of the single-excitation basis {|1>, ..., |n>} that sends site 1 to site n.
///
/// Sites are 1-based at this interface and 0-based in storage. The associated
/// matrix has P(image(a), a) = 1, so P|a> = |image(a)>.
class SitePermutation {
 public:
  /// Validates bijectivity and image(1) == n. `image[a-1]` is the image of site a.
  static SitePermutation from_image(std::span<const int> image);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int site) const { return image_.at(site - 1) + 1; }
  std::vector<int> image() const;

  Eigen::MatrixXd matrix() const;
  bool is_one_cycle() const;

  friend bool operator==(const SitePermutation&, const SitePermutation&) = default;

 private:
  explicit SitePermutation(std::vector<int> zero_based) : image_(std::move(zero_based)) {}

  std::vector<int> image_;
};

struct Cycle {
  /// Distinct 1-based sites in image order; sites[k+1] = image(sites[k]).
  std::vector<int> sites;

  int length() const { return static_cast<int>(sites.size()); }
};

/// Builds the transfer permutation with image(1) = n and image(a) = intermediate_images[a-2]
/// for a in {2..n-1}; image(n) takes the one value of {1..n-1} left over.
/// Every one of the (n-1)! transfer permutations has exactly one such list.
SitePermutation make_transfer_permutation(int n, std::span<const int> intermediate_images);

/// The one-cycle permutation 1 -> n -> n-1 -> ... -> 2 -> 1 (shift matrix with a corner entry).
SitePermutation one_cycle_permutation(int n);

/// The site-reversal permutation a -> n+1-a.
SitePermutation antidiagonal_permutation(int n);

/// All (n-1)! transfer permutations, lexicographic in their intermediate images.
std::vector<SitePermutation> enumerate_transfer_permutations(int n);

std::uint64_t count_transfer_permutations(int n);

/// Disjoint cycles covering all sites; each starts at its smallest site and the
/// list is sorted by that site.
std::vector<Cycle> cycle_decompose(const SitePermutation& p);

SitePermutation recompose(int n, std::span<const Cycle> cycles);

}  // namespace pstforge
