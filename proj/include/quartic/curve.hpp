#pragma once

#include "quartic/forms.hpp"
#include "quartic/labels.hpp"

#include <array>
#include <optional>
#include <vector>

namespace quartic {

/// Contact data of one bitangent: f restricted to the line equals
/// scale * q(s, t)^2 on the stored parametrization.
struct Contact {
  Rat scale;
  BinaryZ q;  // primitive integral contact quadratic
  LineParametrization param;
};

/// One syzygetic quadruple's exact identity
///   l_a l_b l_c l_d = delta * Q^2 + c * f.
struct SyzygeticData {
  std::array<int, 4> labels;  // label indices, ascending
  Rat delta;
  Rat c;
  TernaryZ conic;  // primitive integral Q
};

/// A smooth plane quartic over Q with its 28 labelled rational bitangents,
/// contact data, syzygetic table, and the 7-point provenance.
struct LabelledQuartic {
  std::array<Int, 6> moduli;  // u1, v1, u2, v2, u3, v3
  TernaryZ f;                 // primitive integral, nonsingular
  Int lambda;                 // witness: f(phi) = lambda * J(phi)^2
  std::array<TernaryZ, 3> net;
  std::array<std::array<Int, 3>, 28> lines;  // primitive, by label index
  std::array<Contact, 28> contacts;
  std::vector<SyzygeticData> syzygies;  // aligned with syzygetic_quadruples()

  const std::array<Int, 3>& line(const Label& l) const {
    return lines[label_index(l)];
  }
  const Contact& contact(const Label& l) const {
    return contacts[label_index(l)];
  }

  static Int eval_line(const std::array<Int, 3>& l, const std::array<Int, 3>& P) {
    return l[0] * P[0] + l[1] * P[1] + l[2] * P[2];
  }
};

}  // namespace quartic
