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

#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "kernels.hpp"
#include "polarsar3d/errors.hpp"
#include "polarsar3d/fft.hpp"
#include "polarsar3d/inversion.hpp"

namespace polarsar3d::inversion
{
    namespace
    {
        using Clock = std::chrono::steady_clock;
        using EMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        using EMap = Eigen::Map<const EMatrix>;
        using EVecMap = Eigen::Map<const Eigen::VectorXcd>;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        double norm_of(const std::vector<cdouble> &v)
        {
            double s = 0.0;
            for (cdouble x : v)
                s += std::norm(x);
            return std::sqrt(s);
        }
    } // namespace

    ReconstructionReport mnls_fast(const forward::Hologram &holo, const kgrid::KGrid &grid)
    {
        const std::size_t m = holo.acquisition.size();
        if (m == 0)
            throw invalid_input_error("mnls_fast: empty acquisition");
        if (holo.values.size() != m)
            throw invalid_input_error("mnls_fast: hologram length does not match its acquisition");
        grid.validate();

        ReconstructionReport rep;
        auto t_total = Clock::now();

        auto t0 = Clock::now();
        std::vector<polarimetry::ModeWeights> pi(m);
        for (std::size_t i = 0; i < m; ++i)
        {
            const auto &d = holo.acquisition.descriptors[i];
            pi[i] = polarimetry::inversion_weights(d.theta, d.phi, d.mode);
        }
        rep.timings.weights_s = seconds_since(t0);

        rep.maps.geometry = kgrid::image_geometry(grid);
        std::vector<cdouble> *mapv[3] = {&rep.maps.xx, &rep.maps.yy, &rep.maps.xy};
        const std::size_t n = rep.maps.geometry.size();
        std::vector<double> wk(m);
        auto ramp = kgrid::modulation_ramp(grid);
        for (int k = 0; k < 3; ++k)
        {
            t0 = Clock::now();
            for (std::size_t i = 0; i < m; ++i)
                wk[i] = k == 0 ? pi[i].xx : (k == 1 ? pi[i].yy : pi[i].xy);
            kgrid::GriddedSpectrum spec = kgrid::regrid(holo.values, wk, holo.acquisition, grid);
            rep.timings.regrid_s += seconds_since(t0);

            t0 = Clock::now();
            std::vector<cdouble> img = fft::to_image(spec.values, grid.dims);
            mapv[k]->resize(n);
#pragma omp parallel for schedule(static)
            for (long long v = 0; v < static_cast<long long>(n); ++v)
                (*mapv[k])[v] = img[v] * std::conj(ramp[v]);
            rep.timings.fft_s += seconds_since(t0);
        }

        t0 = Clock::now();
        std::vector<cdouble> fitted = forward::apply_forward(rep.maps, holo.acquisition, grid);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
            fitted[i] = holo.values[i] - fitted[i];
        rep.residual_norm = norm_of(fitted);
        double data_norm = norm_of(holo.values);
        rep.data_fit_relative = data_norm > 0.0 ? rep.residual_norm / data_norm : 0.0;
        rep.timings.residual_s = seconds_since(t0);

        rep.timings.total_s = seconds_since(t_total);
        return rep;
    }

    forward::ThreeMaps mnls_dense(const forward::Hologram &holo, const kgrid::ImageGeometry &geom,
                                  std::size_t cap)
    {
        const std::size_t m = holo.acquisition.size();
        if (m == 0)
            throw invalid_input_error("mnls_dense: empty acquisition");
        if (holo.values.size() != m)
            throw invalid_input_error("mnls_dense: hologram length does not match its acquisition");
        if (m > cap / m)
        {
            std::ostringstream msg;
            msg << "mnls_dense: " << m << " x " << m << " Gram matrix exceeds the cap of " << cap;
            throw size_cap_error(msg.str());
        }

        ComplexMatrix a = forward::dense_matrix(holo.acquisition, geom, cap);
        const std::size_t cols = a.cols;
        EMap am(a.data.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cols));
        EVecMap s(holo.values.data(), static_cast<Eigen::Index>(m));

        Eigen::MatrixXcd gram = am * am.adjoint();

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues()(0);
        double hi = es.eigenvalues()(static_cast<Eigen::Index>(m) - 1);
        if (!(lo > 0.0) || hi / lo > condition_limit)
        {
            std::ostringstream msg;
            msg << "mnls_dense: Gram matrix condition estimate ";
            if (lo > 0.0)
                msg << hi / lo;
            else
                msg << "is unbounded (smallest eigenvalue " << lo << ")";
            msg << "; limit " << condition_limit;

            std::size_t listed = 0;
            for (std::size_t i = 0; i < m && listed < 5; ++i)
                for (std::size_t j = i + 1; j < m && listed < 5; ++j)
                {
                    double di = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
                    double dj = gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
                    if (di <= 0.0 || dj <= 0.0)
                        continue;
                    double coh = std::abs(gram(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(j))) /
                                 std::sqrt(di * dj);
                    if (coh > 1.0 - 1e-8)
                    {
                        msg << (listed ? ", " : "; near-duplicate measurement pairs: ");
                        msg << "(" << i << ", " << j << ")";
                        ++listed;
                    }
                }
            throw conditioning_error(msg.str());
        }

        Eigen::LLT<Eigen::MatrixXcd> llt(gram);
        if (llt.info() != Eigen::Success)
            throw conditioning_error("mnls_dense: Gram matrix factorization failed");
        Eigen::VectorXcd u = llt.solve(s);
        Eigen::VectorXcd shat = am.adjoint() * u;

        const std::size_t n = geom.size();
        forward::ThreeMaps maps;
        maps.geometry = geom;
        maps.xx.assign(shat.data(), shat.data() + n);
        maps.yy.assign(shat.data() + n, shat.data() + 2 * n);
        maps.xy.assign(shat.data() + 2 * n, shat.data() + 3 * n);
        return maps;
    }

    std::vector<cdouble> constrained_min_norm(const ComplexMatrix &Q, const ComplexMatrix &A,
                                              const std::vector<cdouble> &c)
    {
        const std::size_t p = Q.rows;
        const std::size_t m = A.rows;
        if (p == 0 || Q.cols != p)
            throw invalid_input_error("constrained_min_norm: Q must be square and non-empty");
        if (m == 0 || A.cols != p)
            throw invalid_input_error(
                "constrained_min_norm: A must have as many columns as Q and at least one row");
        if (c.size() != m)
            throw invalid_input_error("constrained_min_norm: c length must equal the row count of A");
        if (m > p)
            throw invalid_input_error(
                "constrained_min_norm: more constraints than unknowns, A cannot have full row rank");

        EMap qm(Q.data.data(), static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
        EMap am(A.data.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(p));
        EVecMap cv(c.data(), static_cast<Eigen::Index>(m));

        Eigen::LLT<Eigen::MatrixXcd> qllt(qm);
        if (qllt.info() != Eigen::Success)
            throw invalid_input_error("constrained_min_norm: Q is not positive definite");

        Eigen::MatrixXcd b = qllt.solve(am.adjoint());
        Eigen::MatrixXcd sm = am * b;
        Eigen::LLT<Eigen::MatrixXcd> sllt(sm);
        if (sllt.info() != Eigen::Success)
            throw invalid_input_error("constrained_min_norm: A is rank-deficient");

        Eigen::VectorXcd x = b * sllt.solve(cv);
        return std::vector<cdouble>(x.data(), x.data() + p);
    }

    std::vector<double> aadagger_diagonal(const geometry::Acquisition &acq,
                                          const kgrid::KGrid &grid)
    {
        grid.validate();
        detail::check_acquisition(acq);

        const std::size_t m = acq.size();
        std::vector<double> diag(m);
        std::unordered_map<std::size_t, std::size_t> owner;
        owner.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
        {
            const auto &d = acq.descriptors[i];
            Vec3 u = detail::cell_coords(grid, kgrid::sample_location(d));
            int idx[3];
            for (int axis = 0; axis < 3; ++axis)
            {
                double r = std::round(u[axis]);
                if (std::abs(u[axis] - r) > detail::node_snap_tol || r < 0.0 ||
                    r > static_cast<double>(grid.dims[axis] - 1))
                {
                    std::ostringstream msg;
                    msg << "aadagger_diagonal: measurement " << i
                        << " does not sit on a grid node; the operator is not diagonal";
                    throw identity_violated_error(msg.str());
                }
                idx[axis] = static_cast<int>(r);
            }
            std::size_t node = linear_index(grid.dims, idx[0], idx[1], idx[2]);
            auto [it, fresh] = owner.emplace(node, i);
            if (!fresh)
            {
                std::ostringstream msg;
                msg << "aadagger_diagonal: measurements " << it->second << " and " << i
                    << " share a grid node; the operator is not diagonal";
                throw identity_violated_error(msg.str());
            }
            diag[i] = polarimetry::closed_form_weights(d.theta, d.phi, d.mode).norm2();
        }
        return diag;
    }

    double ls_residual(const forward::ThreeMaps &maps, const forward::Hologram &holo,
                       const kgrid::KGrid &grid)
    {
        if (holo.values.size() != holo.acquisition.size())
            throw invalid_input_error("ls_residual: hologram length does not match its acquisition");
        std::vector<cdouble> fitted = forward::apply_forward(maps, holo.acquisition, grid);
        double s = 0.0;
        for (std::size_t i = 0; i < fitted.size(); ++i)
            s += std::norm(holo.values[i] - fitted[i]);
        return s;
    }

} // namespace polarsar3d::inversion
