#include "qtriality/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace qtriality {

std::size_t BasisSetting::index() const {
    return static_cast<std::size_t>(basis_a) * 3 + static_cast<std::size_t>(basis_b);
}

std::string BasisSetting::name() const {
    return std::string{basis_letter(basis_a), basis_letter(basis_b)};
}

std::array<BasisSetting, 9> all_settings() {
    std::array<BasisSetting, 9> out{};
    const std::array<PauliBasis, 3> bases = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
    std::size_t k = 0;
    for (PauliBasis a : bases)
        for (PauliBasis b : bases) out[k++] = BasisSetting{a, b};
    return out;
}

BasisSetting setting_from_index(std::size_t index) {
    if (index >= 9) throw std::out_of_range("setting_from_index: index must be < 9");
    return BasisSetting{static_cast<PauliBasis>(index / 3), static_cast<PauliBasis>(index % 3)};
}

ComplexMatrix basis_rotation(PauliBasis b) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (b) {
        case PauliBasis::Z:
            return ComplexMatrix::identity(2);
        case PauliBasis::X:
            return ComplexMatrix(2, 2,
                                 {Complex(inv_sqrt2), Complex(inv_sqrt2), Complex(inv_sqrt2),
                                  Complex(-inv_sqrt2)});
        case PauliBasis::Y:
            return ComplexMatrix(2, 2,
                                 {Complex(inv_sqrt2), Complex(0.0, -inv_sqrt2), Complex(inv_sqrt2),
                                  Complex(0.0, inv_sqrt2)});
    }
    throw std::logic_error("basis_rotation: unreachable");
}

char basis_letter(PauliBasis b) {
    switch (b) {
        case PauliBasis::X: return 'X';
        case PauliBasis::Y: return 'Y';
        case PauliBasis::Z: return 'Z';
    }
    throw std::logic_error("basis_letter: unreachable");
}

} // namespace qtriality
