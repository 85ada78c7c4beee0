#pragma once

#include "qtriality/complex_matrix.hpp"

#include <array>
#include <cstddef>
#include <string>

namespace qtriality {

enum class PauliBasis { X, Y, Z };

// One two-qubit measurement setting: a local Pauli basis per qubit.
struct BasisSetting {
    PauliBasis basis_a;
    PauliBasis basis_b;

    // Position in the canonical XX, XY, XZ, YX, ..., ZZ ordering.
    std::size_t index() const;
    std::string name() const; // "XX" .. "ZZ"

    bool operator==(const BasisSetting&) const = default;
};

// The nine settings in canonical order.
std::array<BasisSetting, 9> all_settings();
BasisSetting setting_from_index(std::size_t index);

// Single-qubit rotation that maps the requested measurement basis onto the
// computational one: Z is the identity, X a Hadamard, Y a phase flip
// followed by a Hadamard (so the +i eigenvector lands on |0>).
ComplexMatrix basis_rotation(PauliBasis b);

char basis_letter(PauliBasis b);

} // namespace qtriality
