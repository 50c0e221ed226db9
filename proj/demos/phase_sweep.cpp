// Copyright 2026 The qpdisc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweeps the relative phase of a qubit pair I vs diag(1, e^{i theta}) and
// prints D, the minimum-error probability, and the unambiguous failure
// probability as CSV on stdout. At equal priors p_fail equals D.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qpdisc/unitary_discrimination.hpp"

int main() {
  using namespace qpdisc;

  std::printf("theta,D,p_error,p_fail\n");
  for (int i = 0; i <= 48; ++i) {
    const double theta = std::numbers::pi * i / 48.0;
    ComplexMatrix v = ComplexMatrix::Identity(2, 2);
    v(1, 1) = std::polar(1.0, theta);
    const UnitaryPair pair(ComplexMatrix::Identity(2, 2), v, 0.5, 0.5);
    std::printf("%.8f,%.8f,%.8f,%.8f\n", theta, cb_process_fidelity(pair).d_value,
                min_error_unitary(pair).p_error, unambiguous_unitary(pair).p_fail);
  }
  return 0;
}
