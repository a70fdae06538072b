#include "aq/random_fixtures.hpp"

namespace aq {

ChainComplex random_complex(Rng& rng, int max_len, int max_rank, Int max_entry) {
  std::uniform_int_distribution<int> len_d(1, max_len), rank_d(0, max_rank), coef(-1, 1);
  std::uniform_int_distribution<Int> entry(-max_entry, max_entry);
  const int len = len_d(rng);
  ChainComplex c;
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= len; ++k) ranks.push_back(static_cast<std::size_t>(rank_d(rng)));
  for (auto r : ranks) c.groups.push_back(PresentedGroup::free(r));
  c.differentials.push_back(Matrix(0, ranks[0]));
  Matrix prev;  // d_k, to keep d_k d_{k+1} = 0
  for (int k = 1; k <= len; ++k) {
    const std::size_t rows = ranks[static_cast<std::size_t>(k - 1)], cols = ranks[static_cast<std::size_t>(k)];
    Matrix d(rows, cols);
    if (k == 1) {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) d(i, j) = entry(rng);
    } else {
      const Matrix ker = integer_kernel(prev);
      for (std::size_t j = 0; j < cols && ker.cols() > 0; ++j) {
        for (int attempt = 0; attempt < 20; ++attempt) {
          Vector v(rows, 0);
          for (std::size_t b = 0; b < ker.cols(); ++b) {
            const int c = coef(rng);
            for (std::size_t i = 0; i < rows; ++i) v[i] += c * ker(i, b);
          }
          bool small = true;
          for (Int x : v) small = small && x <= max_entry && x >= -max_entry;
          if (!small) continue;
          for (std::size_t i = 0; i < rows; ++i) d(i, j) = v[i];
          break;
        }
      }
    }
    c.differentials.push_back(d);
    prev = d;
  }
  return c;
}

SimplicialModule random_simplicial(Rng& rng, int max_rank, std::size_t truncation) {
  return dold_kan(ModuleComplex::from_chain_complex(random_complex(rng, 2, max_rank, 3)), truncation);
}

BisimplicialGroup random_bisimplicial(Rng& rng, int max_rank, std::size_t truncation) {
  const auto a = random_simplicial(rng, max_rank, truncation);
  const auto b = random_simplicial(rng, max_rank, truncation);
  BisimplicialGroup v = external_tensor(a, b);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    const auto c = random_simplicial(rng, 1, truncation);
    const auto d = random_simplicial(rng, 1, truncation);
    v = direct_sum(v, external_tensor(c, d));
  }
  return v;
}

}  // namespace aq
