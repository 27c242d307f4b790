#include "cosetlab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gf2 {

namespace {
int word_count(int n) { return (n + 63) / 64; }
} // namespace

Vector::Vector(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw std::invalid_argument("gf2: negative vector length");
}

Vector Vector::from_index(int n, uint64_t index) {
    if (n > 64) throw std::invalid_argument("gf2: from_index limited to 64 bits");
    Vector v(n);
    if (n > 0) v.words_[0] = (n == 64) ? index : (index << (64 - n));
    return v;
}

Vector Vector::from_string(std::string_view bits) {
    Vector v(static_cast<int>(bits.size()));
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(static_cast<int>(i), true);
        else if (bits[i] != '0')
            throw std::invalid_argument("gf2: bitstring must contain only 0/1");
    }
    return v;
}

Vector Vector::random(int n, lab::Rng& rng) {
    Vector v(n);
    for (size_t w = 0; w < v.words_.size(); ++w) v.words_[w] = rng.next_u64();
    int tail = n % 64;
    if (tail != 0 && !v.words_.empty())
        v.words_.back() &= ~0ULL << (64 - tail);
    return v;
}

bool Vector::get(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("gf2: bit index out of range");
    return (words_[i >> 6] >> (63 - (i & 63))) & 1ULL;
}

void Vector::set(int i, bool value) {
    if (i < 0 || i >= n_) throw std::out_of_range("gf2: bit index out of range");
    uint64_t mask = 1ULL << (63 - (i & 63));
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

bool Vector::is_zero() const {
    for (uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

int Vector::leading_bit() const {
    for (size_t wi = 0; wi < words_.size(); ++wi)
        if (words_[wi] != 0) return static_cast<int>(wi) * 64 + std::countl_zero(words_[wi]);
    return -1;
}

uint64_t Vector::index() const {
    if (n_ > 64) throw std::invalid_argument("gf2: index() limited to 64 bits");
    if (n_ == 0) return 0;
    return (n_ == 64) ? words_[0] : (words_[0] >> (64 - n_));
}

void Vector::check_same(const Vector& other) const {
    if (n_ != other.n_) throw std::invalid_argument("gf2: dimension mismatch");
}

Vector& Vector::operator^=(const Vector& other) {
    check_same(other);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

Vector Vector::operator^(const Vector& other) const {
    Vector r = *this;
    r ^= other;
    return r;
}

bool Vector::operator<(const Vector& other) const {
    check_same(other);
    return words_ < other.words_;
}

std::string Vector::to_string() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

bool Vector::inner(const Vector& a, const Vector& b) {
    a.check_same(b);
    uint64_t parity = 0;
    for (size_t w = 0; w < a.words_.size(); ++w)
        parity ^= std::popcount(a.words_[w] & b.words_[w]) & 1u;
    return parity & 1u;
}

Subspace Subspace::full(int n) {
    std::vector<Vector> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vector v(n);
        v.set(i, true);
        rows.push_back(v);
    }
    return Subspace(n, std::move(rows));
}

Vector Subspace::reduce(Vector v) const {
    if (v.size() != n_) throw std::invalid_argument("gf2: dimension mismatch");
    for (const Vector& row : rows_)
        if (v.get(row.leading_bit())) v ^= row;
    return v;
}

bool Subspace::contains(const Vector& v) const { return reduce(v).is_zero(); }

Vector Subspace::element(uint64_t mask) const {
    Vector v(n_);
    for (size_t i = 0; i < rows_.size(); ++i)
        if (mask & (1ULL << i)) v ^= rows_[i];
    return v;
}

std::string Subspace::to_string() const {
    std::string s;
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += '\n';
        s += rows_[i].to_string();
    }
    return s;
}

Subspace rref(const std::vector<Vector>& vectors, int n) {
    if (!vectors.empty()) {
        n = vectors.front().size();
        for (const Vector& v : vectors)
            if (v.size() != n) throw std::invalid_argument("gf2: dimension mismatch");
    }
    std::vector<Vector> rows;
    for (Vector v : vectors) {
        for (const Vector& row : rows)
            if (v.get(row.leading_bit())) v ^= row;
        if (v.is_zero()) continue;
        // eliminate the new pivot from existing rows, then insert in pivot order
        int pivot = v.leading_bit();
        for (Vector& row : rows)
            if (row.get(pivot)) row ^= v;
        auto pos = std::find_if(rows.begin(), rows.end(), [&](const Vector& r) {
            return r.leading_bit() > pivot;
        });
        rows.insert(pos, std::move(v));
    }
    return Subspace(n, std::move(rows));
}

Subspace dual(const Subspace& a) {
    int n = a.ambient();
    std::vector<bool> is_pivot(n, false);
    for (const Vector& row : a.basis()) is_pivot[row.leading_bit()] = true;

    std::vector<Vector> gens;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vector w(n);
        w.set(f, true);
        for (const Vector& row : a.basis())
            if (row.get(f)) w.set(row.leading_bit(), true);
        gens.push_back(std::move(w));
    }
    return rref(gens, n);
}

bool contains(const Subspace& a, const Vector& v) { return a.contains(v); }

Vector canonical_rep(const Subspace& a, const Vector& v) { return a.reduce(v); }

Subspace sample_subspace(int n, int d, lab::Rng& rng) {
    if (d < 0 || d > n) throw std::invalid_argument("gf2: subspace dimension out of range");
    for (;;) {
        std::vector<Vector> vecs;
        vecs.reserve(d);
        for (int i = 0; i < d; ++i) vecs.push_back(Vector::random(n, rng));
        Subspace s = rref(vecs, n);
        if (s.dim() == d) return s;
    }
}

Vector sample_coset_rep(const Subspace& a, lab::Rng& rng) {
    return a.reduce(Vector::random(a.ambient(), rng));
}

int intersection_dim(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("gf2: dimension mismatch");
    std::vector<Vector> joint = a.basis();
    joint.insert(joint.end(), b.basis().begin(), b.basis().end());
    return a.dim() + b.dim() - rref(joint, a.ambient()).dim();
}

Coset::Coset(Subspace a, const Vector& v) : subspace(std::move(a)), rep(subspace.reduce(v)) {}

bool Coset::contains(const Vector& v) const { return subspace.contains(v ^ rep); }

} // namespace gf2
