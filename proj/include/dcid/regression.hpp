#pragma once

#include "dcid/types.hpp"

#include <cstdint>

namespace dcid {

/// Affine least-squares map from p inputs to d outputs.
struct OlsModel {
    Matrix weights;   // p x d
    Vector intercept; // d
    Index fitted_on = 0;

    Matrix predict(const Matrix& x) const;
};

/// Fits y ~ x W + 1 b^T by the normal equations on the centered design. When
/// those are singular or ill-conditioned (rcond <= 1e-12) a ridge of
/// 1e-8 * trace(Xc^T Xc) / p is added.
OlsModel fit_ols(const Matrix& x, const Matrix& y);

enum class ProbeMode {
    held_out, // fit on a seeded probe-train part, score on the rest
    in_sample // fit and score on all rows
};

struct R2Options {
    ProbeMode mode = ProbeMode::held_out;
    double probe_fraction = 0.5; // share of rows used to fit the probe
    std::uint64_t seed = 0x5eedULL;
};

/// Coefficient of determination of a linear probe from x to y, averaged over
/// the columns of y and clamped to [0, 1]. Columns of y without variance on the
/// scoring rows are dropped with a warning; if none remain this throws.
double r_squared(const Matrix& x, const Matrix& y, const R2Options& options = {});
double r_squared(const Matrix& x, const Vector& y, const R2Options& options = {});

} // namespace dcid
