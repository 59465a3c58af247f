#pragma once

#include <map>
#include <span>
#include <vector>

#include "lpaqb/lpa.hpp"

namespace lpaqb {

// Dense matrix of exact scalars, row-major.
class ScalarMatrix {
public:
    ScalarMatrix(const Field& field, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static ScalarMatrix identity(const Field& field, std::size_t n);

    ScalarMatrix operator+(const ScalarMatrix& rhs) const;
    ScalarMatrix operator-(const ScalarMatrix& rhs) const;
    ScalarMatrix operator*(const ScalarMatrix& rhs) const;
    ScalarMatrix conj_transpose() const;
    bool is_zero() const;

    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

// Block-diagonal matrix, one block per sink of the represented graph.
class BlockMatrix {
public:
    explicit BlockMatrix(std::vector<ScalarMatrix> blocks) : blocks_(std::move(blocks)) {}

    std::span<const ScalarMatrix> blocks() const { return blocks_; }
    ScalarMatrix& block(std::size_t i) { return blocks_[i]; }
    const ScalarMatrix& block(std::size_t i) const { return blocks_[i]; }

    BlockMatrix operator+(const BlockMatrix& rhs) const;
    BlockMatrix operator*(const BlockMatrix& rhs) const;
    BlockMatrix conj_transpose() const;
    bool is_zero() const;
    std::vector<Scalar> flatten() const;

    friend bool operator==(const BlockMatrix& a, const BlockMatrix& b);

private:
    std::vector<ScalarMatrix> blocks_;
};

// Faithful matrix representation of the algebra of an acyclic graph: one
// block per sink t, indexed by the paths with range t; a monomial ending at
// a regular vertex is expanded through CK2 until every range is a sink.
class MatrixRep {
public:
    MatrixRep(const Graph& g, const Field& field);  // throws on cyclic input

    struct Block {
        VertexId sink;
        std::vector<Path> basis;  // canonical order: by length, then path order
    };

    const Graph& graph() const { return *g_; }
    const Field& field() const { return field_; }
    std::span<const Block> blocks() const { return blocks_; }
    std::size_t algebra_dimension() const;  // sum of squared block sizes

    BlockMatrix zero_matrix() const;
    BlockMatrix eval(const LpaElement& x) const;

private:
    void expand_(const Path& alpha, const Path& beta, const Scalar& coeff,
                 BlockMatrix& into) const;
    std::size_t block_of_sink_(VertexId v) const;
    std::size_t index_in_block_(std::size_t block, const Path& p) const;

    const Graph* g_;
    Field field_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> sink_to_block_;
    std::vector<std::map<Path, std::size_t>> index_;
};

// Reduced row echelon form; returns the nonzero rows.
std::vector<std::vector<Scalar>> rref(std::vector<std::vector<Scalar>> rows, const Field& field);

// Basis of {y : R y = 0} for the row list R with `cols` columns.
std::vector<std::vector<Scalar>> nullspace(const std::vector<std::vector<Scalar>>& rows,
                                           std::size_t cols, const Field& field);

struct AnnihilatorBasis {
    std::vector<BlockMatrix> matrices;
    std::vector<LpaElement> preimages;
    std::size_t dimension = 0;
};

/// Exact right annihilator of the two-sided ideal generated by the given
/// elements, via the matrix representation. The graph must be acyclic and
/// the generator list nonempty (use a zero element for the zero ideal).
AnnihilatorBasis right_annihilator_acyclic(const Graph& g,
                                           std::span<const LpaElement> generators);

}  // namespace lpaqb
