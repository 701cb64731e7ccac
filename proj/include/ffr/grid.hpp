#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffr/field.hpp"

namespace ffr {

using cplx = std::complex<double>;

enum class Measure { counting, normalized };

// Dense complex-valued function on F^n, 1 <= n <= 3.  The index of the tuple
// (x1,...,xn) is sum x_i * q^(i-1): x1 is the low digit.  This convention is
// frozen because counts and witnesses serialize indices.  The measure tag
// fixes the norm semantics and participates in equality.
class GridFn {
public:
    GridFn(Field f, int n, Measure m);
    GridFn(Field f, int n, Measure m, std::vector<cplx> values);

    const Field& field() const { return field_; }
    int n() const { return n_; }
    Measure measure() const { return measure_; }
    std::uint64_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    cplx at(std::uint64_t idx) const { return values_[idx]; }
    void set(std::uint64_t idx, cplx v) { values_[idx] = v; }

    std::uint64_t index_of(const std::vector<felem>& coords) const;
    std::vector<felem> coords_of(std::uint64_t idx) const;

    bool operator==(const GridFn& other) const;

private:
    Field field_;
    int n_;
    Measure measure_;
    std::vector<cplx> values_;
};

// fhat(xi) = sum_x f(x) e(-x.xi); counting measure in, normalized out.
// Tensorized n-fold size-q transforms; the direct-summation variant below is
// the oracle and both agree to 1e-12.
GridFn fourier_transform(const GridFn& f);
GridFn fourier_transform_direct(const GridFn& f);

// f(x) = q^{-n} sum_xi F(xi) e(x.xi); normalized in, counting out.
GridFn inverse_transform(const GridFn& F);

// L^p norm under the declared measure; p = infinity() gives the sup norm.
double lp_norm(const GridFn& f, double p);

// <f, g> = sum f conj(g), weighted by the (shared) measure.
cplx pairing(const GridFn& f, const GridFn& g);

struct PlancherelReport {
    double lhs;     // ||fhat||_{L^2(dxi)}
    double rhs;     // ||f||_{L^2(dx)}
    double rel_err;
};
PlancherelReport plancherel_check(const GridFn& f);

// (f*g)(x) = sum_y f(y) g(x-y), both counting measure.
GridFn convolve(const GridFn& f, const GridFn& g);

// f(. - a) for a given by its grid index.
GridFn translate(const GridFn& f, std::uint64_t aIdx);

}  // namespace ffr
