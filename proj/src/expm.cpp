// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "edlab/dynamics.hpp"

namespace edlab
{

ComplexMatrix expm(const ComplexMatrix &a)
{
  if (a.rows() != a.cols())
  {
    throw PreconditionError("expm requires a square matrix");
  }
  const Eigen::Index n = a.rows();
  constexpr double theta13 = 5.371920351148152;
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1))
  {
    throw Error("expm of a non-finite matrix");
  }
  int s = 0;
  if (norm1 > theta13)
  {
    s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const ComplexMatrix x = a / std::ldexp(1.0, s);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;
  const ComplexMatrix u =
    x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 +
         b[1] * id);
  const ComplexMatrix v =
    x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  ComplexMatrix r = Eigen::PartialPivLU<ComplexMatrix>(v - u).solve(v + u);
  for (int i = 0; i < s; ++i)
  {
    r = r * r;
  }
  return r;
}

}  // namespace edlab
