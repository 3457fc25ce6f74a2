#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numeric>
#include <vector>

#include "vton/common.hpp"
#include "vton/rng.hpp"

namespace vton {

// Dense row-major tensor. Rank is dynamic but in practice 1..3:
// vectors (D), token matrices (N, C), feature maps (C, H, W).
template <typename S>
struct TensorT {
    std::vector<int> shape;
    std::vector<S> data;

    TensorT() = default;
    explicit TensorT(std::vector<int> sh) : shape(std::move(sh)), data(count(shape), S(0)) {}

    static size_t count(const std::vector<int>& sh) {
        size_t n = 1;
        for (int d : sh) {
            check(d >= 0, "tensor: negative dimension");
            n *= static_cast<size_t>(d);
        }
        return n;
    }

    size_t numel() const { return data.size(); }
    int dim(int i) const { return shape[static_cast<size_t>(i)]; }

    S& operator[](size_t i) { return data[i]; }
    S operator[](size_t i) const { return data[i]; }

    // 2-D (rows, cols)
    S& at(int r, int c) { return data[static_cast<size_t>(r) * shape[1] + c]; }
    S at(int r, int c) const { return data[static_cast<size_t>(r) * shape[1] + c]; }

    // 3-D (channels, rows, cols)
    S& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x];
    }
    S at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * shape[1] + y) * shape[2] + x];
    }

    void fill(S v) { std::fill(data.begin(), data.end(), v); }
    void zero() { fill(S(0)); }

    void randn(Rng& rng, double stddev = 1.0) {
        for (auto& v : data) v = static_cast<S>(rng.normal() * stddev);
    }

    bool same_shape(const TensorT& o) const { return shape == o.shape; }

    TensorT& operator+=(const TensorT& o) {
        check(same_shape(o), "tensor +=: shape mismatch");
        for (size_t i = 0; i < data.size(); i++) data[i] += o.data[i];
        return *this;
    }

    TensorT& operator*=(S v) {
        for (auto& x : data) x *= v;
        return *this;
    }

    bool all_finite() const {
        for (S v : data)
            if (!std::isfinite(static_cast<double>(v))) return false;
        return true;
    }

    double sum_sq() const {
        double s = 0;
        for (S v : data) s += static_cast<double>(v) * static_cast<double>(v);
        return s;
    }

    template <typename T>
    TensorT<T> cast() const {
        TensorT<T> out(shape);
        for (size_t i = 0; i < data.size(); i++) out.data[i] = static_cast<T>(data[i]);
        return out;
    }
};

using Tensor = TensorT<float>;

namespace detail {
template <typename S>
using EigenMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename S>
using MapMat = Eigen::Map<EigenMat<S>>;
template <typename S>
using CMapMat = Eigen::Map<const EigenMat<S>>;
}  // namespace detail

// C(m,n) = op(A) * op(B), optionally accumulating into C.
template <typename S>
void gemm(const S* a, const S* b, S* c, int m, int k, int n, bool trans_a = false,
          bool trans_b = false, bool accumulate = false) {
    using namespace detail;
    MapMat<S> mc(c, m, n);
    auto run = [&](const auto& ma, const auto& mb) {
        if (accumulate)
            mc.noalias() += ma * mb;
        else
            mc.noalias() = ma * mb;
    };
    if (!trans_a && !trans_b)
        run(CMapMat<S>(a, m, k), CMapMat<S>(b, k, n));
    else if (trans_a && !trans_b)
        run(CMapMat<S>(a, k, m).transpose(), CMapMat<S>(b, k, n));
    else if (!trans_a && trans_b)
        run(CMapMat<S>(a, m, k), CMapMat<S>(b, n, k).transpose());
    else
        run(CMapMat<S>(a, k, m).transpose(), CMapMat<S>(b, n, k).transpose());
}

}  // namespace vton
