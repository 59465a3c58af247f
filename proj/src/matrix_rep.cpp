#include "lpaqb/matrix_rep.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpaqb {

ScalarMatrix::ScalarMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

ScalarMatrix ScalarMatrix::identity(const Field& field, std::size_t n) {
    ScalarMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    ScalarMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    ScalarMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
    ScalarMatrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Scalar& b = rhs.at(k, j);
                if (!b.is_zero()) out.at(i, j) += a * b;
            }
        }
    }
    return out;
}

ScalarMatrix ScalarMatrix::conj_transpose() const {
    ScalarMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).conj();
    return out;
}

bool ScalarMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

template <typename Op>
BlockMatrix blockwise(const BlockMatrix& a, const BlockMatrix& b, Op op) {
    if (a.blocks().size() != b.blocks().size())
        throw std::invalid_argument("block count mismatch");
    std::vector<ScalarMatrix> out;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(op(a.block(i), b.block(i)));
    return BlockMatrix(std::move(out));
}

}  // namespace

BlockMatrix BlockMatrix::operator+(const BlockMatrix& rhs) const {
    return blockwise(*this, rhs, [](const ScalarMatrix& x, const ScalarMatrix& y) { return x + y; });
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& rhs) const {
    return blockwise(*this, rhs, [](const ScalarMatrix& x, const ScalarMatrix& y) { return x * y; });
}

BlockMatrix BlockMatrix::conj_transpose() const {
    std::vector<ScalarMatrix> out;
    for (const auto& b : blocks_) out.push_back(b.conj_transpose());
    return BlockMatrix(std::move(out));
}

bool BlockMatrix::is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const ScalarMatrix& b) { return b.is_zero(); });
}

std::vector<Scalar> BlockMatrix::flatten() const {
    std::vector<Scalar> out;
    for (const auto& b : blocks_)
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(b.at(i, j));
    return out;
}

bool operator==(const BlockMatrix& a, const BlockMatrix& b) { return a.blocks_ == b.blocks_; }

MatrixRep::MatrixRep(const Graph& g, const Field& field) : g_(&g), field_(field) {
    if (!simple_cycles(g).empty())
        throw std::invalid_argument("matrix representation requires an acyclic graph");
    sink_to_block_.assign(g.vertex_count(), static_cast<std::size_t>(-1));
    // Longest path in an acyclic graph is at most |vertices| - 1.
    std::vector<Path> all = enumerate_paths(g, g.vertex_count() - 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_sink(v)) continue;
        Block b;
        b.sink = v;
        for (const Path& p : all)
            if (p.range() == v) b.basis.push_back(p);
        std::sort(b.basis.begin(), b.basis.end(), [](const Path& x, const Path& y) {
            if (x.length() != y.length()) return x.length() < y.length();
            return x < y;
        });
        sink_to_block_[v] = blocks_.size();
        index_.emplace_back();
        for (std::size_t i = 0; i < b.basis.size(); ++i) index_.back().emplace(b.basis[i], i);
        blocks_.push_back(std::move(b));
    }
}

std::size_t MatrixRep::algebra_dimension() const {
    std::size_t dim = 0;
    for (const auto& b : blocks_) dim += b.basis.size() * b.basis.size();
    return dim;
}

BlockMatrix MatrixRep::zero_matrix() const {
    std::vector<ScalarMatrix> blocks;
    for (const auto& b : blocks_)
        blocks.emplace_back(field_, b.basis.size(), b.basis.size());
    return BlockMatrix(std::move(blocks));
}

std::size_t MatrixRep::block_of_sink_(VertexId v) const {
    std::size_t b = sink_to_block_[v];
    if (b == static_cast<std::size_t>(-1)) throw std::logic_error("not a sink");
    return b;
}

std::size_t MatrixRep::index_in_block_(std::size_t block, const Path& p) const {
    auto it = index_[block].find(p);
    if (it == index_[block].end()) throw std::logic_error("path missing from block basis");
    return it->second;
}

void MatrixRep::expand_(const Path& alpha, const Path& beta, const Scalar& coeff,
                        BlockMatrix& into) const {
    VertexId r = alpha.range();
    if (g_->is_sink(r)) {
        std::size_t b = block_of_sink_(r);
        into.block(b).at(index_in_block_(b, alpha), index_in_block_(b, beta)) += coeff;
        return;
    }
    // CK2 substitution alpha beta^* = sum over e out of r of (alpha e)(beta e)^*.
    for (EdgeId e : g_->out_edges(r)) expand_(alpha.extended(e), beta.extended(e), coeff, into);
}

BlockMatrix MatrixRep::eval(const LpaElement& x) const {
    if (&x.context()->graph() != g_)
        throw std::invalid_argument("element belongs to a different graph");
    if (!(x.context()->field() == field_))
        throw std::invalid_argument("element belongs to a different field");
    BlockMatrix out = zero_matrix();
    for (const PathMonomial& m : x.monomials()) expand_(m.alpha, m.beta, m.coeff, out);
    return out;
}

std::vector<std::vector<Scalar>> rref(std::vector<std::vector<Scalar>> rows, const Field& field) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
        std::size_t pivot = lead;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[lead], rows[pivot]);
        Scalar inv = rows[lead][c].inverse();
        for (std::size_t j = c; j < cols; ++j) rows[lead][j] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][c].is_zero()) continue;
            Scalar factor = rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= factor * rows[lead][j];
        }
        ++lead;
    }
    rows.resize(lead, std::vector<Scalar>(cols, field.zero()));
    return rows;
}

std::vector<std::vector<Scalar>> nullspace(const std::vector<std::vector<Scalar>>& rows,
                                           std::size_t cols, const Field& field) {
    std::vector<std::vector<Scalar>> reduced = rref(rows, field);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    for (const auto& row : reduced) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_zero()) {
                pivot_col.push_back(c);
                is_pivot[c] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> y(cols, field.zero());
        y[f] = field.one();
        for (std::size_t i = 0; i < pivot_col.size(); ++i) y[pivot_col[i]] = -reduced[i][f];
        basis.push_back(std::move(y));
    }
    return basis;
}

AnnihilatorBasis right_annihilator_acyclic(const Graph& g,
                                           std::span<const LpaElement> generators) {
    if (generators.empty())
        throw std::invalid_argument("right_annihilator_acyclic: nonempty generator list required");
    const LpaContextPtr& ctx = generators.front().context();
    if (&ctx->graph() != &g)
        throw std::invalid_argument("generators belong to a different graph");
    for (const auto& gen : generators)
        if (!gen.context()->same_context(*ctx))
            throw std::invalid_argument("generators built against different contexts");
    const Field& field = ctx->field();
    MatrixRep rep(g, field);

    std::vector<BlockMatrix> images;
    for (const auto& gen : generators) images.push_back(rep.eval(gen));

    AnnihilatorBasis result;
    for (std::size_t t = 0; t < rep.blocks().size(); ++t) {
        const std::size_t n = rep.blocks()[t].basis.size();
        // Row constraints for {(M B) y = 0 : B a basis monomial}: the rows of
        // each image M itself, plus — since M E_jk is column j of M moved to
        // column k — every unit row e_k as soon as M has a nonzero entry.
        std::vector<std::vector<Scalar>> constraint_rows;
        for (const BlockMatrix& m : images) {
            const ScalarMatrix& blk = m.block(t);
            bool nonzero = false;
            for (std::size_t r = 0; r < n; ++r) {
                std::vector<Scalar> row;
                bool row_nonzero = false;
                for (std::size_t c = 0; c < n; ++c) {
                    row.push_back(blk.at(r, c));
                    if (!blk.at(r, c).is_zero()) row_nonzero = true;
                }
                if (row_nonzero) {
                    constraint_rows.push_back(std::move(row));
                    nonzero = true;
                }
            }
            if (nonzero) {
                for (std::size_t k = 0; k < n; ++k) {
                    std::vector<Scalar> unit(n, field.zero());
                    unit[k] = field.one();
                    constraint_rows.push_back(std::move(unit));
                }
            }
        }
        std::vector<std::vector<Scalar>> kernel = nullspace(constraint_rows, n, field);
        // Columns of an annihilating Y range over the kernel independently:
        // one basis matrix b e_c^T per kernel vector b and column c.
        for (const auto& b : kernel) {
            for (std::size_t c = 0; c < n; ++c) {
                BlockMatrix mat = rep.zero_matrix();
                std::vector<PathMonomial> raw;
                for (std::size_t r = 0; r < n; ++r) {
                    if (b[r].is_zero()) continue;
                    mat.block(t).at(r, c) = b[r];
                    raw.push_back({b[r], rep.blocks()[t].basis[r], rep.blocks()[t].basis[c]});
                }
                result.preimages.push_back(LpaElement::from_monomials(ctx, raw));
                result.matrices.push_back(std::move(mat));
            }
        }
        result.dimension += kernel.size() * n;
    }
    return result;
}

}  // namespace lpaqb
