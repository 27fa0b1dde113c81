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

#ifndef GEOMECH_RANDOM_INSTANCES_H_
#define GEOMECH_RANDOM_INSTANCES_H_

#include <random>

#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"
#include "geomech/oblivious.h"

// Seeded generators of exact test instances. All draws come from the
// caller's engine so a fixed seed reproduces the whole suite.
namespace geomech {

// Loss with l(i,i) in {0,1} and non-negative integer increments in 0..3 per
// unit of distance, drawn independently left and right of each diagonal,
// then prefix-summed. Side information is a random nonempty subset.
ConsumerProfile RandomMonotoneProfile(int n, std::mt19937_64& rng);

// Rows of small non-negative integer weights, normalized.
PostProcess RandomStochastic(int size, std::mt19937_64& rng);

// Column-wise multiplicative walk: row i+1 scales row i entrywise by factors
// in [g, 1/g] with g^2 >= alpha, then rows are normalized. The result is
// alpha-DP by construction and frequently violates the triple condition.
Mechanism RandomDpWalk(int n, const Rational& alpha, std::mt19937_64& rng);

// geometric(beta) * T for a random beta in [alpha, 1) and random stochastic
// T; alpha-DP and derivable by construction.
Mechanism RandomDerivable(int n, const Rational& alpha, std::mt19937_64& rng);

// Either of the two families above, chosen by a fair coin.
Mechanism RandomDpMechanism(int n, const Rational& alpha, std::mt19937_64& rng);

// Lifted geometric at a level strictly between alpha and 1 with every
// entry scaled by a random factor in [1, k] and rows renormalized, where
// k^2 bounds the slack between the two levels. Rows inside one count class
// generally differ.
DbMechanism RandomDpDbMechanism(const DatabaseSpace& space,
                                const Rational& alpha, std::mt19937_64& rng);

}  // namespace geomech

#endif  // GEOMECH_RANDOM_INSTANCES_H_
