// SPDX-License-Identifier: Apache-2.0
//
// polarsar3d - 3D radar imaging from polarization-diverse measurements
// Copyright (C) 2026 polarsar3d contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/inversion.hpp"
#include "polarsar3d/polarimetry.hpp"
#include "testutil.hpp"

using namespace polarsar3d;
using namespace testutil;

namespace
{
    using EMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using EVector = Eigen::VectorXcd;

    Eigen::Map<const EMatrix> as_eigen(const ComplexMatrix &A)
    {
        return {A.data.data(), static_cast<Eigen::Index>(A.rows),
                static_cast<Eigen::Index>(A.cols)};
    }

    ComplexMatrix from_eigen(const EMatrix &A)
    {
        ComplexMatrix out(A.rows(), A.cols());
        Eigen::Map<EMatrix>(out.data.data(), A.rows(), A.cols()) = A;
        return out;
    }

    // Independent minimum-norm solution shat = A^H (A A^H)^-1 S.
    EVector pinv_solution(const ComplexMatrix &A, const std::vector<cdouble> &s)
    {
        auto Ae = as_eigen(A);
        EVector se = Eigen::Map<const EVector>(s.data(), static_cast<Eigen::Index>(s.size()));
        Eigen::MatrixXcd G = Ae * Ae.adjoint();
        return Ae.adjoint() * G.llt().solve(se);
    }

    forward::Hologram random_hologram(std::mt19937_64 &gen, const geometry::Acquisition &acq)
    {
        forward::Hologram holo;
        holo.acquisition = acq;
        holo.values = random_complex(gen, acq.size());
        return holo;
    }

    EMatrix random_square(std::mt19937_64 &gen, int n)
    {
        std::normal_distribution<double> nd;
        EMatrix A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                A(i, j) = cdouble{nd(gen), nd(gen)};
        return A;
    }
} // namespace

TEST_CASE("mnls_fast fits on-node holograms exactly")
{
    std::mt19937_64 gen(101);
    for (int t = 0; t < 6; ++t)
    {
        kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest);
        auto holo = random_hologram(gen, on_grid_acq(gen, g, 24));
        auto report = inversion::mnls_fast(holo, g);
        CHECK(report.data_fit_relative < 1e-10);
        CHECK(report.maps.xx.size() == total_size(g.dims));
        CHECK(report.timings.total_s >= 0.0);
    }
}

TEST_CASE("the reported residual is the root of the squared misfit")
{
    std::mt19937_64 gen(103);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::linear);
    auto holo = random_hologram(gen, off_grid_acq(gen, g, 30));
    auto report = inversion::mnls_fast(holo, g);

    double squared = inversion::ls_residual(report.maps, holo, g);
    CHECK(report.residual_norm * report.residual_norm ==
          doctest::Approx(squared).epsilon(1e-10));

    double norm_s = std::sqrt(norm2(holo.values));
    CHECK(report.data_fit_relative ==
          doctest::Approx(report.residual_norm / norm_s).epsilon(1e-12));
}

TEST_CASE("mnls_fast matches the dense oracle on distinct grid nodes")
{
    std::mt19937_64 gen(107);
    for (int t = 0; t < 5; ++t)
    {
        kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 5, 6);
        auto holo = random_hologram(gen, on_grid_acq(gen, g, 32));
        auto fast = inversion::mnls_fast(holo, g);
        auto dense = inversion::mnls_dense(holo, kgrid::image_geometry(g));
        CHECK(maps_rel_err(fast.maps, dense) < 1e-8);
    }
}

TEST_CASE("the reconstruction has minimum norm among all exact fits")
{
    std::mt19937_64 gen(109);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 4, 5);
    auto holo = random_hologram(gen, on_grid_acq(gen, g, 16));
    auto report = inversion::mnls_fast(holo, g);

    auto A = forward::dense_matrix(holo.acquisition, kgrid::image_geometry(g));
    auto Ae = as_eigen(A);
    Eigen::MatrixXcd G = Ae * Ae.adjoint();
    auto gllt = G.llt();

    std::vector<cdouble> shat;
    shat.insert(shat.end(), report.maps.xx.begin(), report.maps.xx.end());
    shat.insert(shat.end(), report.maps.yy.begin(), report.maps.yy.end());
    shat.insert(shat.end(), report.maps.xy.begin(), report.maps.xy.end());
    EVector se = Eigen::Map<const EVector>(shat.data(), static_cast<Eigen::Index>(shat.size()));

    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        EVector v(se.size());
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = cdouble{ud(gen), ud(gen)};
        // Project v onto the null space of A: the perturbed vector still
        // fits the data exactly, so it can only be longer.
        EVector p = v - Ae.adjoint() * gllt.solve(Ae * v);
        REQUIRE(p.norm() > 1e-6);
        CHECK(std::abs(se.dot(p)) < 1e-10 * se.norm() * p.norm());
        CHECK((se + p).norm() > se.norm());
    }
}

TEST_CASE("duplicated measurements are reported as near-duplicates")
{
    std::mt19937_64 gen(113);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 4, 4);
    auto acq = kgrid::on_grid_acquisition(g, {Dims3{1, 2, 2}, Dims3{1, 2, 2}}, Mode::HH);
    forward::Hologram holo = random_hologram(gen, acq);
    CHECK_THROWS_WITH_AS(inversion::mnls_dense(holo, kgrid::image_geometry(g)),
                         doctest::Contains("near-duplicate"), conditioning_error);
    CHECK_THROWS_WITH_AS(inversion::mnls_dense(holo, kgrid::image_geometry(g)),
                         doctest::Contains("(0, 1)"), conditioning_error);
}

TEST_CASE("mnls_dense refuses oversized instances")
{
    std::mt19937_64 gen(127);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 4, 4);
    kgrid::ImageGeometry geom = kgrid::image_geometry(g);

    // Gram cap: m*m exceeds the budget.
    auto big = random_hologram(gen, on_grid_acq(gen, g, 40));
    CHECK_THROWS_AS(inversion::mnls_dense(big, geom, 1000), size_cap_error);

    // Operator cap: m*3n exceeds the budget even though m*m does not.
    kgrid::ImageGeometry fat;
    fat.dims = {16, 16, 16};
    auto small = random_hologram(gen, on_grid_acq(gen, g, 3));
    CHECK_THROWS_AS(inversion::mnls_dense(small, fat, 1000), size_cap_error);
}

TEST_CASE("a single boresight measurement reconstructs a single xx voxel")
{
    kgrid::ImageGeometry geom;
    geom.dims = {1, 1, 1};
    geom.voxel_pitch = {1.0, 1.0, 1.0};
    geom.origin = {0.0, 0.0, 0.0};

    forward::Hologram holo;
    holo.acquisition.descriptors.push_back({0.0, 0.0, 1e9, Mode::HH});
    holo.values = {cdouble{0.6, -1.4}};

    auto maps = inversion::mnls_dense(holo, geom);
    REQUIRE(maps.xx.size() == 1);
    CHECK(std::abs(maps.xx[0] - cdouble{0.6, -1.4}) < 1e-14);
    CHECK(std::abs(maps.yy[0]) < 1e-14);
    CHECK(std::abs(maps.xy[0]) < 1e-14);
}

TEST_CASE("constrained_min_norm with a square system returns the unique solution")
{
    std::mt19937_64 gen(131);
    for (int t = 0; t < 6; ++t)
    {
        const int n = 6;
        EMatrix Ae = random_square(gen, n);
        EMatrix B = random_square(gen, n);
        EMatrix Qe = B.adjoint() * B + EMatrix::Identity(n, n);

        auto c = random_complex(gen, n);
        EVector ce = Eigen::Map<const EVector>(c.data(), n);

        auto x = inversion::constrained_min_norm(from_eigen(Qe), from_eigen(Ae), c);
        EVector want = Ae.fullPivLu().solve(ce);
        EVector got = Eigen::Map<const EVector>(x.data(), n);
        CHECK((got - want).norm() < 1e-10 * want.norm());
    }
}

TEST_CASE("constrained_min_norm with identity cost is the pseudoinverse")
{
    std::mt19937_64 gen(137);
    const int m = 4, p = 9;
    std::normal_distribution<double> nd;
    EMatrix Ae(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j)
            Ae(i, j) = cdouble{nd(gen), nd(gen)};

    auto c = random_complex(gen, m);
    EVector ce = Eigen::Map<const EVector>(c.data(), m);

    auto x = inversion::constrained_min_norm(from_eigen(EMatrix::Identity(p, p)),
                                             from_eigen(Ae), c);
    Eigen::MatrixXcd G = Ae * Ae.adjoint();
    EVector want = Ae.adjoint() * G.llt().solve(ce);
    EVector got = Eigen::Map<const EVector>(x.data(), p);
    CHECK((got - want).norm() < 1e-10 * want.norm());

    // The solution satisfies the constraint.
    CHECK((Ae * got - ce).norm() < 1e-10 * ce.norm());
}

TEST_CASE("constrained_min_norm validates its inputs")
{
    std::mt19937_64 gen(139);
    const int n = 4;
    EMatrix Ae = random_square(gen, n);
    auto c = random_complex(gen, n);

    // Indefinite cost.
    EMatrix Qbad = EMatrix::Identity(n, n);
    Qbad(2, 2) = cdouble{-1.0, 0.0};
    CHECK_THROWS_AS(inversion::constrained_min_norm(from_eigen(Qbad), from_eigen(Ae), c),
                    invalid_input_error);

    // Rank-deficient constraints.
    EMatrix Adup = Ae;
    Adup.row(2) = Adup.row(1);
    CHECK_THROWS_AS(
        inversion::constrained_min_norm(from_eigen(EMatrix::Identity(n, n)), from_eigen(Adup), c),
        invalid_input_error);

    // Dimension mismatches.
    auto cshort = random_complex(gen, n - 1);
    CHECK_THROWS_AS(
        inversion::constrained_min_norm(from_eigen(EMatrix::Identity(n, n)), from_eigen(Ae),
                                        cshort),
        invalid_input_error);
    EMatrix wide(n, n + 2);
    wide.setZero();
    CHECK_THROWS_AS(inversion::constrained_min_norm(from_eigen(EMatrix::Identity(n, n)),
                                                    from_eigen(wide), c),
                    invalid_input_error);

    // More constraints than unknowns.
    EMatrix tall(n + 1, n);
    tall.setZero();
    auto ctall = random_complex(gen, n + 1);
    CHECK_THROWS_AS(inversion::constrained_min_norm(from_eigen(EMatrix::Identity(n, n)),
                                                    from_eigen(tall), ctall),
                    invalid_input_error);
}

TEST_CASE("aadagger_diagonal returns the squared weight norms on distinct nodes")
{
    std::mt19937_64 gen(149);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 5, 7);
    auto acq = on_grid_acq(gen, g, 20);
    auto diag = inversion::aadagger_diagonal(acq, g);
    REQUIRE(diag.size() == 20);
    for (std::size_t i = 0; i < acq.size(); ++i)
    {
        const auto &d = acq.descriptors[i];
        auto w = polarimetry::closed_form_weights(d.theta, d.phi, d.mode);
        CHECK(diag[i] ==
              doctest::Approx(w.xx * w.xx + w.yy * w.yy + w.xy * w.xy).epsilon(1e-12));
    }

    // The full Gram matrix really is diagonal: off-diagonal entries of
    // A A^H vanish when all samples sit on distinct nodes.
    auto A = forward::dense_matrix(acq, kgrid::image_geometry(g));
    auto Ae = as_eigen(A);
    Eigen::MatrixXcd G = Ae * Ae.adjoint();
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j)
            if (i != j)
                CHECK(std::abs(G(i, j)) < 1e-10 * diag[i]);
            else
                CHECK(G(i, i).real() == doctest::Approx(diag[i]).epsilon(1e-10));
}

TEST_CASE("aadagger_diagonal rejects off-node and duplicated samples")
{
    std::mt19937_64 gen(151);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest, 4, 5);

    auto off = off_grid_acq(gen, g, 4);
    CHECK_THROWS_WITH_AS(inversion::aadagger_diagonal(off, g),
                         doctest::Contains("grid node"), identity_violated_error);

    auto dup = kgrid::on_grid_acquisition(g, {Dims3{1, 1, 2}, Dims3{1, 1, 2}}, Mode::VV);
    CHECK_THROWS_WITH_AS(inversion::aadagger_diagonal(dup, g),
                         doctest::Contains("share a grid node"), identity_violated_error);
}

TEST_CASE("mnls_fast validates its inputs")
{
    std::mt19937_64 gen(157);
    kgrid::KGrid g = random_grid(gen, kgrid::Interp::nearest);
    forward::Hologram holo = random_hologram(gen, on_grid_acq(gen, g, 8));
    holo.values.pop_back();
    CHECK_THROWS_AS(inversion::mnls_fast(holo, g), invalid_input_error);

    forward::Hologram empty;
    CHECK_THROWS_AS(inversion::mnls_fast(empty, g), invalid_input_error);
}
