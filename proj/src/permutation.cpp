#include "pstforge/permutation.hpp"

#include "pstforge/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pstforge {

SitePermutation SitePermutation::from_image(std::span<const int> image) {
  const int n = static_cast<int>(image.size());
  if (n < 2) throw InvalidInput("permutation needs at least 2 sites, got " + std::to_string(n));
  std::vector<int> zero_based(image.size());
  std::vector<bool> seen(image.size(), false);
  for (int a = 0; a < n; ++a) {
    const int target = image[a];
    if (target < 1 || target > n) {
      throw InvalidInput("image of site " + std::to_string(a + 1) + " is out of range: " +
                         std::to_string(target));
    }
    if (seen[target - 1]) {
      throw InvalidInput("site " + std::to_string(target) + " appears twice in image");
    }
    seen[target - 1] = true;
    zero_based[a] = target - 1;
  }
  if (zero_based[0] != n - 1) {
    throw InvalidInput("transfer permutation must send site 1 to site " + std::to_string(n));
  }
  return SitePermutation(std::move(zero_based));
}

std::vector<int> SitePermutation::image() const {
  std::vector<int> out(image_.size());
  std::transform(image_.begin(), image_.end(), out.begin(), [](int s) { return s + 1; });
  return out;
}

Eigen::MatrixXd SitePermutation::matrix() const {
  const int n = size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) p(image_[a], a) = 1.0;
  return p;
}

bool SitePermutation::is_one_cycle() const {
  int steps = 1;
  for (int s = image_[0]; s != 0; s = image_[s]) ++steps;
  return steps == size();
}

SitePermutation make_transfer_permutation(int n, std::span<const int> intermediate_images) {
  if (n < 2) throw InvalidInput("transfer permutation needs n >= 2");
  if (static_cast<int>(intermediate_images.size()) != n - 2) {
    throw InvalidInput("expected " + std::to_string(n - 2) + " intermediate images, got " +
                       std::to_string(intermediate_images.size()));
  }
  std::vector<bool> used(n, false);
  std::vector<int> image(n);
  image[0] = n;
  for (int k = 0; k < n - 2; ++k) {
    const int target = intermediate_images[k];
    if (target < 1 || target > n - 1) {
      throw InvalidInput("intermediate image " + std::to_string(target) + " outside {1.." +
                         std::to_string(n - 1) + "}");
    }
    if (used[target - 1]) throw InvalidInput("duplicate intermediate image " + std::to_string(target));
    used[target - 1] = true;
    image[k + 1] = target;
  }
  for (int s = 0; s < n - 1; ++s) {
    if (!used[s]) image[n - 1] = s + 1;
  }
  return SitePermutation::from_image(image);
}

SitePermutation one_cycle_permutation(int n) {
  std::vector<int> image(n);
  image[0] = n;
  for (int a = 2; a <= n; ++a) image[a - 1] = a - 1;
  return SitePermutation::from_image(image);
}

SitePermutation antidiagonal_permutation(int n) {
  std::vector<int> image(n);
  for (int a = 1; a <= n; ++a) image[a - 1] = n + 1 - a;
  return SitePermutation::from_image(image);
}

std::vector<SitePermutation> enumerate_transfer_permutations(int n) {
  if (n < 2) throw InvalidInput("transfer permutation needs n >= 2");
  // Images of sites 2..n range over all orderings of {1..n-1}.
  std::vector<int> tail(n - 1);
  std::iota(tail.begin(), tail.end(), 1);
  std::vector<SitePermutation> out;
  do {
    std::vector<int> image(n);
    image[0] = n;
    std::copy(tail.begin(), tail.end(), image.begin() + 1);
    out.push_back(SitePermutation::from_image(image));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

std::uint64_t count_transfer_permutations(int n) {
  if (n < 2) throw InvalidInput("transfer permutation needs n >= 2");
  std::uint64_t f = 1;
  for (int k = 2; k < n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<Cycle> cycle_decompose(const SitePermutation& p) {
  const int n = p.size();
  std::vector<bool> visited(n + 1, false);
  std::vector<Cycle> cycles;
  for (int start = 1; start <= n; ++start) {
    if (visited[start]) continue;
    Cycle c;
    for (int s = start; !visited[s]; s = p(s)) {
      visited[s] = true;
      c.sites.push_back(s);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

SitePermutation recompose(int n, std::span<const Cycle> cycles) {
  std::vector<int> image(n, 0);
  for (const Cycle& c : cycles) {
    for (int k = 0; k < c.length(); ++k) {
      const int from = c.sites[k];
      if (from < 1 || from > n || image[from - 1] != 0) {
        throw InvalidInput("cycles are not a disjoint cover of the sites");
      }
      image[from - 1] = c.sites[(k + 1) % c.length()];
    }
  }
  if (std::find(image.begin(), image.end(), 0) != image.end()) {
    throw InvalidInput("cycles do not cover every site");
  }
  return SitePermutation::from_image(image);
}

}  // namespace pstforge
