#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ortholab {

// Direct sum of full matrix algebras M_{n_1} + ... + M_{n_k}.
struct BlockAlgebra {
    std::vector<int> blocks;

    BlockAlgebra() = default;
    explicit BlockAlgebra(std::vector<int> sizes) : blocks(std::move(sizes))
    {
        if (blocks.empty()) throw std::invalid_argument("block algebra needs at least one block");
        for (int n : blocks)
            if (n < 1) throw std::invalid_argument("block sizes must be positive");
    }
    int count() const { return static_cast<int>(blocks.size()); }
    int dimension() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }
    bool operator==(const BlockAlgebra&) const = default;
};

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// One dense matrix per block; arithmetic is blockwise.
template <class Scalar>
class BlockElement {
public:
    using Matrix = DenseMatrix<Scalar>;
    using Real = typename Eigen::NumTraits<Scalar>::Real;

    BlockElement() = default;
    BlockElement(BlockAlgebra algebra, std::vector<Matrix> mats) : algebra_(std::move(algebra)), mats_(std::move(mats))
    {
        if (static_cast<int>(mats_.size()) != algebra_.count()) throw std::invalid_argument("block count mismatch");
        for (int i = 0; i < algebra_.count(); ++i)
            if (mats_[i].rows() != algebra_.blocks[i] || mats_[i].cols() != algebra_.blocks[i])
                throw std::invalid_argument("block shape mismatch");
    }

    static BlockElement zero(const BlockAlgebra& a)
    {
        std::vector<Matrix> m;
        for (int n : a.blocks) m.push_back(Matrix::Zero(n, n));
        return BlockElement(a, std::move(m));
    }
    static BlockElement identity(const BlockAlgebra& a)
    {
        std::vector<Matrix> m;
        for (int n : a.blocks) m.push_back(Matrix::Identity(n, n));
        return BlockElement(a, std::move(m));
    }
    // Unit of block i.
    static BlockElement block_unit(const BlockAlgebra& a, int i)
    {
        BlockElement e = zero(a);
        e.mats_[i].setIdentity();
        return e;
    }

    const BlockAlgebra& algebra() const { return algebra_; }
    int count() const { return algebra_.count(); }
    const Matrix& block(int i) const { return mats_[i]; }
    Matrix& block(int i) { return mats_[i]; }
    const std::vector<Matrix>& blocks() const { return mats_; }

    BlockElement adjoint() const
    {
        return map([](const Matrix& m) -> Matrix { return m.adjoint(); });
    }

    template <class F>
    BlockElement map(F f) const
    {
        std::vector<Matrix> out;
        out.reserve(mats_.size());
        for (const auto& m : mats_) out.push_back(f(m));
        return BlockElement(algebra_, std::move(out));
    }

    template <class F>
    BlockElement zip(const BlockElement& o, F f) const
    {
        if (!(algebra_ == o.algebra_)) throw std::invalid_argument("elements of different algebras");
        std::vector<Matrix> out;
        out.reserve(mats_.size());
        for (std::size_t i = 0; i < mats_.size(); ++i) out.push_back(f(mats_[i], o.mats_[i]));
        return BlockElement(algebra_, std::move(out));
    }

    BlockElement operator+(const BlockElement& o) const
    {
        return zip(o, [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; });
    }
    BlockElement operator-(const BlockElement& o) const
    {
        return zip(o, [](const Matrix& a, const Matrix& b) -> Matrix { return a - b; });
    }
    BlockElement operator*(const BlockElement& o) const
    {
        return zip(o, [](const Matrix& a, const Matrix& b) -> Matrix { return a * b; });
    }
    BlockElement operator*(Scalar s) const
    {
        return map([s](const Matrix& a) -> Matrix { return a * s; });
    }
    friend BlockElement operator*(Scalar s, const BlockElement& e) { return e * s; }
    BlockElement operator-() const
    {
        return map([](const Matrix& a) -> Matrix { return -a; });
    }

    // Operator norm: largest singular value over the blocks.
    Real norm() const
    {
        Real best = 0;
        for (const auto& m : mats_) {
            if (m.size() == 0) continue;
            Eigen::JacobiSVD<Matrix> svd(m);
            best = std::max(best, svd.singularValues()(0));
        }
        return best;
    }

    Real hermitian_defect() const
    {
        return (*this - adjoint()).norm();
    }

private:
    BlockAlgebra algebra_;
    std::vector<Matrix> mats_;
};

using Complex = std::complex<double>;
using Element = BlockElement<Complex>;
using CMatrix = DenseMatrix<Complex>;

template <class Scalar>
struct HermitianEigen {
    Eigen::VectorXd values;        // ascending
    DenseMatrix<Scalar> vectors;   // columns, unitary
    int sweeps = 0;
};

// Cyclic Jacobi for Hermitian (or real symmetric) matrices. Each rotation
// removes the phase of the pivot and then applies the real 2x2 rotation.
template <class Scalar>
HermitianEigen<Scalar> jacobi_eigen(const DenseMatrix<Scalar>& h, int max_sweeps = 100)
{
    using std::abs;
    using std::sqrt;
    const int n = static_cast<int>(h.rows());
    DenseMatrix<Scalar> a = (h + h.adjoint()) * Scalar(0.5);
    DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);
    HermitianEigen<Scalar> out;
    const double scale = std::max(a.norm(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(Complex(a(p, q)));
        if (sqrt(off) <= 1e-15 * scale) break;
        out.sweeps = sweep + 1;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double r = abs(a(p, q));
                if (r <= 1e-300) continue;
                const Scalar phase = a(p, q) / r;
                const double app = std::real(a(p, p)), aqq = std::real(a(q, q));
                const double tau = (aqq - app) / (2 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (abs(tau) + sqrt(1 + tau * tau));
                const double c = 1 / sqrt(1 + t * t), s = t * c;
                const Scalar ph = Eigen::numext::conj(phase);  // e^{-i phi}
                for (int k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * ph * akq;
                    a(k, q) = s * akp + c * ph * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = Scalar(0);
                for (int k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ph * vkq;
                    v(k, q) = s * vkp + c * ph * vkq;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values(i) = std::real(a(order[i], order[i]));
        out.vectors.col(i) = v.col(order[i]);
    }
    return out;
}

}  // namespace ortholab
