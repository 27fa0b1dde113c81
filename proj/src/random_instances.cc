// Copyright 2026 The Geomech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomech/random_instances.h"

#include <vector>

namespace geomech {
namespace {

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

RMatrix NormalizeRows(int rows, int cols, std::vector<Rational> weights) {
  for (int i = 0; i < rows; ++i) {
    Rational sum = 0;
    for (int r = 0; r < cols; ++r) sum += weights[i * cols + r];
    for (int r = 0; r < cols; ++r) weights[i * cols + r] /= sum;
  }
  return *RMatrix::Create(rows, cols, std::move(weights));
}

// Largest k/16 <= 1 with (k/16)^2 >= alpha, i.e. the tightest grid step
// whose square still respects alpha.
Rational StepBound(const Rational& alpha) {
  for (int k = 1; k <= 16; ++k) {
    const Rational g = MakeRational(k, 16);
    if (g * g >= alpha) return g;
  }
  return Rational(1);
}

}  // namespace

ConsumerProfile RandomMonotoneProfile(int n, std::mt19937_64& rng) {
  const int size = n + 1;
  std::vector<Rational> loss(size * size);
  for (int i = 0; i < size; ++i) {
    loss[i * size + i] = UniformInt(rng, 0, 1);
    for (int r = i + 1; r < size; ++r) {
      loss[i * size + r] = loss[i * size + r - 1] + UniformInt(rng, 0, 3);
    }
    for (int r = i - 1; r >= 0; --r) {
      loss[i * size + r] = loss[i * size + r + 1] + UniformInt(rng, 0, 3);
    }
  }
  std::vector<int> side;
  while (side.empty()) {
    for (int i = 0; i < size; ++i) {
      if (UniformInt(rng, 0, 1)) side.push_back(i);
    }
  }
  return *ConsumerProfile::Create(*RMatrix::Create(size, size, std::move(loss)),
                                  std::move(side));
}

PostProcess RandomStochastic(int size, std::mt19937_64& rng) {
  std::vector<Rational> weights(size * size);
  for (int i = 0; i < size; ++i) {
    bool any = false;
    while (!any) {
      for (int r = 0; r < size; ++r) {
        const int w = UniformInt(rng, 0, 4);
        weights[i * size + r] = w;
        any = any || w > 0;
      }
    }
  }
  return *PostProcess::Create(NormalizeRows(size, size, std::move(weights)));
}

Mechanism RandomDpWalk(int n, const Rational& alpha, std::mt19937_64& rng) {
  const int size = n + 1;
  const Rational low = StepBound(alpha);
  const Rational high = 1 / low;
  std::vector<Rational> weights(size * size);
  for (int r = 0; r < size; ++r) weights[r] = UniformInt(rng, 1, 6);
  for (int i = 1; i < size; ++i) {
    for (int r = 0; r < size; ++r) {
      // Factor on a five-point grid spanning [low, high].
      const int t = UniformInt(rng, 0, 4);
      const Rational factor = low + (high - low) * MakeRational(t, 4);
      weights[i * size + r] = weights[(i - 1) * size + r] * factor;
    }
  }
  return *Mechanism::Create(NormalizeRows(size, size, std::move(weights)));
}

Mechanism RandomDerivable(int n, const Rational& alpha, std::mt19937_64& rng) {
  const int t = UniformInt(rng, 0, 3);
  // beta on the grid alpha + (1 - alpha) * t / 4, t in 0..3.
  const Rational beta = alpha + (1 - alpha) * MakeRational(t, 4);
  const Mechanism geometric = *GeometricRestricted(n, beta);
  return *Apply(geometric, RandomStochastic(n + 1, rng));
}

Mechanism RandomDpMechanism(int n, const Rational& alpha,
                            std::mt19937_64& rng) {
  return UniformInt(rng, 0, 1) ? RandomDpWalk(n, alpha, rng)
                               : RandomDerivable(n, alpha, rng);
}

DbMechanism RandomDpDbMechanism(const DatabaseSpace& space,
                                const Rational& alpha, std::mt19937_64& rng) {
  const Rational beta = (1 + alpha) / 2;
  // Largest k = 1 + s/32 with k^2 <= beta / alpha.
  Rational spread = 1;
  for (int s = 1; s <= 32; ++s) {
    const Rational k = 1 + MakeRational(s, 32);
    if (k * k * alpha > beta) break;
    spread = k;
  }
  const Mechanism base = *GeometricRestricted(space.n(), beta);
  const int size = space.n() + 1;
  std::vector<Rational> weights(space.num_databases() * size);
  for (int d = 0; d < space.num_databases(); ++d) {
    const int i = space.Count(d);
    for (int r = 0; r < size; ++r) {
      const int t = UniformInt(rng, 0, 4);
      const Rational factor = 1 + (spread - 1) * MakeRational(t, 4);
      weights[d * size + r] = base.prob(i, r) * factor;
    }
  }
  return *DbMechanism::Create(
      space, NormalizeRows(space.num_databases(), size, std::move(weights)));
}

}  // namespace geomech
