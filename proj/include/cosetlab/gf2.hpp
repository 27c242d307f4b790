// Exact linear algebra over F_2: vectors, subspaces in reduced row echelon
// form, duals, cosets and canonical representatives.
//
// Bit conventions: a vector has bits b0..b_{n-1} with b0 most significant,
// both for lexicographic comparison and for computational-basis indexing
// (basis index = sum b_i * 2^{n-1-i}). Rows are packed MSB-first into 64-bit
// words so that word-wise unsigned comparison equals lexicographic order.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cosetlab/rng.hpp"

namespace gf2 {

class Vector {
  public:
    Vector() = default;
    explicit Vector(int n);

    static Vector from_index(int n, uint64_t index);
    static Vector from_string(std::string_view bits);
    static Vector random(int n, lab::Rng& rng);

    int size() const { return n_; }
    bool get(int i) const;
    void set(int i, bool value);
    bool is_zero() const;

    // Index of the first set bit, -1 for the zero vector.
    int leading_bit() const;

    // Computational-basis index; requires size() <= 64.
    uint64_t index() const;

    Vector& operator^=(const Vector& other);
    Vector operator^(const Vector& other) const;

    bool operator==(const Vector& other) const = default;
    // Lexicographic order with b0 most significant.
    bool operator<(const Vector& other) const;

    std::string to_string() const;

    // <a, b> mod 2
    static bool inner(const Vector& a, const Vector& b);

  private:
    int n_ = 0;
    std::vector<uint64_t> words_;

    void check_same(const Vector& other) const;
};

class Subspace {
  public:
    Subspace() = default;
    static Subspace zero(int n) { return Subspace(n, {}); }
    static Subspace full(int n);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // RREF basis rows, pivots strictly increasing.
    const std::vector<Vector>& basis() const { return rows_; }

    bool contains(const Vector& v) const;

    // Residual of v after elimination against the basis; this is the
    // lexicographically smallest element of the coset v + A.
    Vector reduce(Vector v) const;

    // Element XOR-combining the basis rows selected by mask (bit i of mask
    // selects row i); mask < 2^dim.
    Vector element(uint64_t mask) const;

    std::string to_string() const;

    bool operator==(const Subspace& other) const = default;

  private:
    Subspace(int n, std::vector<Vector> rows) : n_(n), rows_(std::move(rows)) {}

    int n_ = 0;
    std::vector<Vector> rows_;

    friend Subspace rref(const std::vector<Vector>& vectors, int n);
};

// Span of the given vectors in unique RREF form. `n` disambiguates the
// ambient dimension when the list is empty; when vectors are present their
// common length wins and a mismatch throws.
Subspace rref(const std::vector<Vector>& vectors, int n = 0);

// Orthogonal complement; dim(A) + dim(dual(A)) = ambient.
Subspace dual(const Subspace& a);

bool contains(const Subspace& a, const Vector& v);

// Lexicographically smallest vector of the coset A + v.
Vector canonical_rep(const Subspace& a, const Vector& v);

// Uniform over d-dimensional subspaces of F_2^n: rejection-sample d vectors
// until independent, then reduce. Every subspace has the same number of
// ordered independent bases, so the output is uniform.
Subspace sample_subspace(int n, int d, lab::Rng& rng);

// Uniform over the 2^{n-d} canonical coset representatives of A.
Vector sample_coset_rep(const Subspace& a, lab::Rng& rng);

int intersection_dim(const Subspace& a, const Subspace& b);

// A coset A + rep with the representative stored canonically.
struct Coset {
    Subspace subspace;
    Vector rep;

    Coset(Subspace a, const Vector& v);
    bool contains(const Vector& v) const;
};

} // namespace gf2
