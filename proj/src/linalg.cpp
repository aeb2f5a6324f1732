#include "uqa/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace uqa {

SparseVec sv_add(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (a[i].first > b[j].first) out.push_back(b[j++]);
        else {
            Rat v = a[i].second + b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i; ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

SparseVec sv_axpy(const SparseVec& a, const Rat& f, const SparseVec& b) {
    if (f.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (a[i].first > b[j].first) {
            out.emplace_back(b[j].first, f * b[j].second);
            ++j;
        } else {
            Rat v = a[i].second + f * b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i; ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.emplace_back(b[j].first, f * b[j].second);
    return out;
}

SparseVec sv_scale(const SparseVec& a, const Rat& f) {
    if (f.is_zero()) return {};
    SparseVec out;
    out.reserve(a.size());
    for (const auto& [c, v] : a) out.emplace_back(c, f * v);
    return out;
}

const Rat* sv_find(const SparseVec& a, int col) {
    auto it = std::lower_bound(a.begin(), a.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it == a.end() || it->first != col) return nullptr;
    return &it->second;
}

void SparseMatrix::set(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::set: index out of range");
    SparseVec& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int cc) { return p.first < cc; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero()) row.erase(it);
        else it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::add(int r, int c, const Rat& v) {
    if (v.is_zero()) return;
    SparseVec& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int cc) { return p.first < cc; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second.is_zero()) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

Rat SparseMatrix::get(int r, int c) const {
    const Rat* p = sv_find(data_[r], c);
    return p ? *p : Rat(0);
}

namespace {

// Gaussian elimination carrying an optional right-hand side alongside.
struct Elim {
    std::vector<SparseVec> rows;
    std::vector<Rat> rhs;
    bool with_rhs = false;
    std::vector<int> pivots;     // pivot columns in order
    int cols = 0;

    void run() {
        int r = 0;
        const int nrows = static_cast<int>(rows.size());
        for (int c = 0; c < cols && r < nrows; ++c) {
            int pr = -1;
            for (int i = r; i < nrows; ++i) {
                if (!rows[i].empty() && rows[i].front().first == c) { pr = i; break; }
            }
            if (pr < 0) continue;
            std::swap(rows[pr], rows[r]);
            if (with_rhs) std::swap(rhs[pr], rhs[r]);
            Rat p = rows[r].front().second;
            if (!(p == Rat(1))) {
                Rat ip = inv(p);
                rows[r] = sv_scale(rows[r], ip);
                if (with_rhs) rhs[r] *= ip;
            }
            for (int i = 0; i < nrows; ++i) {
                if (i == r) continue;
                const Rat* e = sv_find(rows[i], c);
                if (!e) continue;
                Rat f = -*e;
                rows[i] = sv_axpy(rows[i], f, rows[r]);
                if (with_rhs) rhs[i] += f * rhs[r];
            }
            pivots.push_back(c);
            ++r;
        }
    }
};

} // namespace

RrefResult rref(const SparseMatrix& m) {
    Elim e;
    e.cols = m.cols();
    e.rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) e.rows.push_back(m.row(r));
    e.run();
    SparseMatrix red(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r) red.set_row(r, std::move(e.rows[r]));
    return {std::move(red), std::move(e.pivots)};
}

int rank(const SparseMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

std::optional<std::vector<Rat>> solve(const SparseMatrix& m, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs length != rows");
    Elim e;
    e.cols = m.cols();
    e.with_rhs = true;
    e.rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) e.rows.push_back(m.row(r));
    e.rhs = b;
    e.run();
    const int nr = static_cast<int>(e.rows.size());
    for (int r = static_cast<int>(e.pivots.size()); r < nr; ++r) {
        if (e.rows[r].empty() && !e.rhs[r].is_zero()) return std::nullopt;
    }
    std::vector<Rat> x(m.cols(), Rat(0));
    for (size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rhs[i];
    return x;
}

std::vector<std::vector<Rat>> kernel_basis(const SparseMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(m.cols(), Rat(0));
        v[f] = Rat(1);
        for (size_t i = 0; i < rr.pivots.size(); ++i) {
            const Rat* e = sv_find(rr.reduced.row(static_cast<int>(i)), f);
            if (e) v[rr.pivots[i]] = -*e;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Rat> mat_vec(const SparseMatrix& m, const std::vector<Rat>& x) {
    if (static_cast<int>(x.size()) != m.cols())
        throw std::invalid_argument("mat_vec: length mismatch");
    std::vector<Rat> y(m.rows(), Rat(0));
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) y[r] += v * x[c];
    return y;
}

} // namespace uqa
