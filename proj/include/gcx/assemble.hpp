#pragma once

// Spots (finite sums of graded pieces) and operator matrices between them.
//
// A spot is a list of blocks. A basis block is the basis of one (spec, slice); an image
// block is a list of independent vectors of fHGC (+) fGC, used for the HL summands of the
// H-flat complexes. Plain basis blocks sit in the plain summand of an AugmentedVector,
// hairy ones in the hairy summand.
//
// Rows of an assembled matrix: basis blocks keep their basis order; terms landing in an
// image block get one row per distinct ambient graph, in order of first appearance. Ranks
// do not see the difference because image blocks embed injectively into their ambient span.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tbb/parallel_for.h>

#include "enumerate.hpp"
#include "expr.hpp"
#include "sparse.hpp"
#include "vector.hpp"

namespace gcx {

struct Block {
    ComplexSpec spec;
    GradedSlice slice;
    bool image = false;
    // image blocks only: the vectors and the (kind, slice) pieces their terms lie in
    std::vector<AugmentedVector> vectors;
    std::vector<std::pair<Kind, GradedSlice>> parts;
    ComplexSpec plain_spec;  // ambient of the plain parts; spec is the ambient of the hairy ones

    int dim() const { return image ? static_cast<int>(vectors.size()) : enumerate_basis(spec, slice).size(); }

    bool contains_piece(Kind k, const GradedSlice& s) const {
        if (!image) return spec.kind == k && slice == s;
        for (const auto& [pk, ps] : parts)
            if (pk == k && ps == s) return true;
        return false;
    }
};

using Spot = std::vector<Block>;

inline int spot_dim(const Spot& s) {
    int d = 0;
    for (const Block& b : s) d += b.dim();
    return d;
}

inline std::string describe(const Block& b) {
    if (!b.image) return to_string(b.spec) + to_string(b.slice);
    std::string s = "image:" + to_string(b.spec);
    for (const auto& [k, sl] : b.parts) s += (k == Kind::plain ? ":plain" : ":hairy") + to_string(sl);
    return s;
}

// Column j of a spot as an element of fHGC (+) fGC.
inline AugmentedVector spot_column(const Spot& spot, int j, int n) {
    for (const Block& b : spot) {
        const int d = b.dim();
        if (j < d) {
            if (b.image) return b.vectors[static_cast<std::size_t>(j)];
            AugmentedVector av(n);
            GraphVector x = single(enumerate_basis(b.spec, b.slice).elements[static_cast<std::size_t>(j)]);
            if (b.spec.kind == Kind::plain) av.extra_part = std::move(x);
            else av.hairy_part = std::move(x);
            return av;
        }
        j -= d;
    }
    throw std::out_of_range("spot column out of range");
}

inline int spot_parity(const Spot& s) {
    if (s.empty()) return 0;
    const int n = s.front().spec.n;
    for (const Block& b : s)
        if (b.spec.n != n) throw std::invalid_argument("spot mixes parities");
    return n;
}

struct AssembleOptions {
    bool parallel = true;
    long max_nonzeros = 50'000'000;
};

namespace detail {

// Row lookup over the target spot.
class RowMap {
public:
    explicit RowMap(const Spot& tgt) : tgt_(tgt) {
        int off = 0;
        for (const Block& b : tgt_) {
            offsets_.push_back(off);
            if (!b.image) off += b.dim();
        }
        basis_rows_ = off;
    }

    // Row of a term, or -1 when the term lies outside every block.
    int row(const CanonicalGraph& g) {
        for (std::size_t i = 0; i < tgt_.size(); ++i) {
            const Block& b = tgt_[i];
            if (!b.contains_piece(g.flavor.kind, g.slice)) continue;
            if (!b.image) {
                const int k = enumerate_basis(b.spec, b.slice).find(g.encoding);
                if (k >= 0) return offsets_[i] + k;
                continue;
            }
            if (!constraint_filter(decode(g), g.flavor.kind == Kind::plain ? b.plain_spec : b.spec)) continue;
            const std::string key = std::to_string(i) + (g.flavor.kind == Kind::plain ? "|p|" : "|h|") + g.encoding;
            auto it = extra_.find(key);
            if (it != extra_.end()) return it->second;
            const int r = basis_rows_ + static_cast<int>(extra_.size());
            extra_.emplace(key, r);
            return r;
        }
        return -1;
    }

    int rows() const { return basis_rows_ + static_cast<int>(extra_.size()); }

private:
    const Spot& tgt_;
    std::vector<int> offsets_;
    int basis_rows_ = 0;
    std::map<std::string, int> extra_;
};

}  // namespace detail

// Optional persistent store for assembled matrices (installed by the cache layer). Only
// matrices between basis blocks are stored; their rows and columns follow basis order.
struct MatrixStore {
    std::function<std::optional<SparseMatrix>(const std::string&)> load;
    std::function<void(const std::string&, const SparseMatrix&)> save;
};

inline MatrixStore& matrix_store() {
    static MatrixStore store;
    return store;
}

// Store key of a matrix, or "" when a block is an image block.
inline std::string matrix_key(const OperatorExpr& op, const Spot& src, const Spot& tgt) {
    std::string key = op.to_string();
    for (const Spot* s : {&src, &tgt}) {
        key += '|';
        for (const Block& b : *s) {
            if (b.image) return {};
            key += describe(b) + ';';
        }
    }
    return key;
}

// Matrix of op from src to tgt; terms outside tgt are dropped (sub/quotient projection).
inline SparseMatrix assemble_matrix(const OperatorExpr& op, const Spot& src, const Spot& tgt,
                                    const AssembleOptions& opt = {}) {
    const MatrixStore& store = matrix_store();
    const std::string key = store.load || store.save ? matrix_key(op, src, tgt) : std::string();
    if (!key.empty() && store.load)
        if (auto m = store.load(key)) return *m;
    const int cols = spot_dim(src);
    const int n = src.empty() ? spot_parity(tgt) : spot_parity(src);
    std::vector<AugmentedVector> images(static_cast<std::size_t>(cols));
    auto work = [&](int j) { images[static_cast<std::size_t>(j)] = op.apply(spot_column(src, j, n)); };
    if (opt.parallel && cols > 1) {
        tbb::parallel_for(0, cols, work);
    } else {
        for (int j = 0; j < cols; ++j) work(j);
    }
    detail::RowMap rows(tgt);
    std::vector<Triplet> entries;
    for (int j = 0; j < cols; ++j) {
        for (const GraphVector* part : {&images[static_cast<std::size_t>(j)].hairy_part, &images[static_cast<std::size_t>(j)].extra_part})
            for (const auto& [g, c] : part->terms()) {
                const int r = rows.row(g);
                if (r >= 0) entries.push_back({r, j, c});
            }
        if (static_cast<long>(entries.size()) > opt.max_nonzeros)
            throw std::runtime_error("matrix exceeds the nonzero limit of " + std::to_string(opt.max_nonzeros));
    }
    SparseMatrix m(rows.rows(), cols);
    for (const Triplet& t : entries) m.add(t.row, t.col, t.value);
    m.normalize();
    if (!key.empty() && store.save) store.save(key, m);
    return m;
}

// Basis block list for one (spec, slice); empty when the slice has no graphs.
inline Spot basis_spot(const ComplexSpec& spec, const GradedSlice& s) {
    if (enumerate_basis(spec, s).size() == 0) return {};
    return {Block{spec, s, false, {}, {}, {}}};
}

}  // namespace gcx
