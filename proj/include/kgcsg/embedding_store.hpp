#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgcsg/triples.hpp"

namespace kgcsg {

/// Token -> dense vector table. All vectors share one dimension and are
/// finite; tokens keep insertion order.
class EmbeddingStore {
public:
    explicit EmbeddingStore(std::size_t dim);

    void add(const std::string& token, std::span<const double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    bool contains(const std::string& token) const { return index_.contains(token); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    /// Empty span when the token is absent.
    std::span<const double> find(const std::string& token) const;

    /// Copy with every vector scaled to unit L2 norm (zero vectors unchanged).
    EmbeddingStore normalized() const;

    friend bool operator==(const EmbeddingStore& a, const EmbeddingStore& b);

private:
    std::size_t dim_;
    std::vector<std::string> tokens_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// phi(h, r) = e_h concatenated with e_r.
struct CompositeVector {
    std::vector<double> components;
    std::size_t class_id = 0;
};

using ClassVectors = std::vector<std::vector<CompositeVector>>;

/// Text format: `<count> <dim>` header, then `<token> <v_1> ... <v_dim>` rows.
EmbeddingStore load_embeddings(std::istream& in);
EmbeddingStore load_embeddings_file(const std::string& path);

/// Writes shortest round-trip decimals, so load(write(s)) == s bit for bit.
void write_embeddings(std::ostream& out, const EmbeddingStore& store);

/// Deterministic stand-in embedder: each token's vector is uniform on
/// [-1, 1]^dim from a generator keyed by hash(seed, token).
EmbeddingStore hash_embed(const std::vector<std::string>& tokens, std::size_t dim, std::uint64_t seed);

/// Entities followed by relations, each sorted.
std::vector<std::string> vocabulary(const TripleSet& ts);

CompositeVector compose(const EmbeddingStore& store, const std::string& head, const std::string& relation,
                        std::size_t class_id = 0);

/// Writes phi(h, r) into `out`, which must hold 2 * dim values.
void compose_into(const EmbeddingStore& store, const std::string& head, const std::string& relation,
                  std::span<double> out);

ClassVectors materialize_class_vectors(const EmbeddingStore& store, const ClassIndex& ci);

}  // namespace kgcsg
