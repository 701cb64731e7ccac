#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ffr {

// Field element code: base-p digit encoding of the coefficient vector of a
// polynomial residue, value in [0, q).  Code 0 is the additive identity,
// code 1 the multiplicative identity, and codes below p form the prime
// subfield.
using felem = std::uint32_t;

struct Subfield {
    std::uint32_t degree;        // j with order = p^j, j | k
    std::uint64_t order;
    std::vector<felem> elements; // sorted; fixed points of the p^j-power Frobenius
};

// GF(p^k) for odd prime p, built on a monic irreducible modulus of degree k
// over GF(p).  Immutable after construction; every operation is pure, so a
// Field may be shared freely across threads.  Copies are cheap (shared
// internals).
class Field {
public:
    // Default modulus: the first monic irreducible polynomial of degree k in
    // coefficient-code order, so element encodings reproduce across runs.
    static Field make(std::uint32_t p, std::uint32_t k = 1);
    // coeffs: k+1 values in [0, p), low degree first, leading coefficient 1.
    // Irreducibility is re-verified by trial division.
    static Field with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);
    // "p^k" or "p^k/c0,c1,...,ck"
    static Field parse(const std::string& desc);

    std::uint32_t p() const;
    std::uint32_t k() const;
    std::uint64_t q() const;
    const std::vector<std::uint32_t>& modulus() const;
    std::string describe() const;  // "p^k/c0,c1,...,ck"

    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const;
    felem neg(felem a) const;
    felem mul(felem a, felem b) const;
    felem inv(felem a) const;  // throws std::domain_error on a == 0
    felem pow(felem a, std::uint64_t e) const;
    felem from_int(std::int64_t n) const;  // n mod p into the prime subfield

    // Tr(a) = sum of a^{p^i}, i < k; lands in the prime subfield.
    std::uint32_t trace(felem a) const;
    // e(a) = exp(2*pi*i * Tr(a) / p): the canonical nonprincipal additive
    // character.  Additive and unimodular.
    std::complex<double> character(felem a) const;
    // e(-a), used pervasively by the transforms.
    std::complex<double> character_neg(felem a) const;

    // True iff a = x^2 for some x (0 counts as a square).
    bool is_square(felem a) const;
    bool minus_one_is_square() const;

    // One entry per divisor of k, ascending order.
    std::vector<Subfield> subfields() const;

    // Table of the p-th roots of unity indexed by trace value, plus the
    // per-element trace, for kernel-level character sums.
    const std::complex<double>* unity_table() const;  // size p
    const std::uint16_t* trace_table() const;         // size q

    bool operator==(const Field& other) const;

private:
    struct Impl;
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace ffr
