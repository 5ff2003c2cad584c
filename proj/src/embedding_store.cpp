#include "kgcsg/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kgcsg/error.hpp"
#include "kgcsg/rng.hpp"

namespace kgcsg {

namespace {

bool has_space(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    });
}

// Splits on runs of blanks.
std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const auto start = i;
        while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <class T>
bool parse_number(std::string_view s, T& value) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ConfigError("embedding dimension must be positive");
}

void EmbeddingStore::add(const std::string& token, std::span<const double> values) {
    if (token.empty() || has_space(token)) throw DataError("invalid embedding token '" + token + "'");
    if (values.size() != dim_) {
        throw DataError("token '" + token + "' has " + std::to_string(values.size()) + " components, expected " +
                        std::to_string(dim_));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw DataError("token '" + token + "' has a non-finite component");
    }
    if (!index_.try_emplace(token, tokens_.size()).second) throw DataError("duplicate token '" + token + "'");
    tokens_.push_back(token);
    data_.insert(data_.end(), values.begin(), values.end());
}

std::span<const double> EmbeddingStore::find(const std::string& token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return {};
    return {data_.data() + it->second * dim_, dim_};
}

EmbeddingStore EmbeddingStore::normalized() const {
    EmbeddingStore out(dim_);
    std::vector<double> buf(dim_);
    for (std::size_t t = 0; t < tokens_.size(); ++t) {
        const double* v = data_.data() + t * dim_;
        double sq = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) sq += v[j] * v[j];
        const double norm = std::sqrt(sq);
        for (std::size_t j = 0; j < dim_; ++j) buf[j] = norm > 0.0 ? v[j] / norm : v[j];
        out.add(tokens_[t], buf);
    }
    return out;
}

bool operator==(const EmbeddingStore& a, const EmbeddingStore& b) {
    if (a.dim_ != b.dim_ || a.tokens_ != b.tokens_) return false;
    // Bitwise comparison; -0.0 and 0.0 count as different.
    return std::equal(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end(),
                      [](double x, double y) { return std::signbit(x) == std::signbit(y) && x == y; });
}

EmbeddingStore load_embeddings(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string_view> header;
    while (header.empty() && std::getline(in, line)) {
        ++lineno;
        header = split_ws(line);
    }
    std::size_t count = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) || dim == 0) {
        throw DataError("embedding file: header must be '<token_count> <dim>'");
    }

    EmbeddingStore store(dim);
    std::vector<double> values(dim);
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_ws(line);
        if (fields.empty()) continue;
        const std::string token(fields[0]);
        if (fields.size() - 1 != dim) {
            throw DataError("embedding file line " + std::to_string(lineno) + ": token '" + token + "' has " +
                            std::to_string(fields.size() - 1) + " components, header says " + std::to_string(dim));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            if (!parse_number(fields[j + 1], values[j])) {
                throw DataError("embedding file line " + std::to_string(lineno) + ": token '" + token +
                                "' has unparsable value '" + std::string(fields[j + 1]) + "'");
            }
        }
        store.add(token, values);
    }
    if (store.size() != count) {
        throw DataError("embedding file: header declares " + std::to_string(count) + " tokens, found " +
                        std::to_string(store.size()));
    }
    return store;
}

EmbeddingStore load_embeddings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embedding file '" + path + "'");
    return load_embeddings(in);
}

void write_embeddings(std::ostream& out, const EmbeddingStore& store) {
    out << store.size() << ' ' << store.dim() << '\n';
    char buf[32];
    for (const auto& token : store.tokens()) {
        out << token;
        for (double v : store.find(token)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            out << ' ';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing embedding file");
}

EmbeddingStore hash_embed(const std::vector<std::string>& tokens, std::size_t dim, std::uint64_t seed) {
    EmbeddingStore store(dim);
    std::vector<double> values(dim);
    for (const auto& token : tokens) {
        if (store.contains(token)) continue;
        rng::SplitMix64 gen(rng::mix(seed, rng::fnv1a(token)));
        for (auto& v : values) v = 2.0 * rng::uniform01(gen) - 1.0;
        store.add(token, values);
    }
    return store;
}

std::vector<std::string> vocabulary(const TripleSet& ts) {
    std::vector<std::string> out(ts.entities().begin(), ts.entities().end());
    out.insert(out.end(), ts.relations().begin(), ts.relations().end());
    return out;
}

void compose_into(const EmbeddingStore& store, const std::string& head, const std::string& relation,
                  std::span<double> out) {
    const auto h = store.find(head);
    if (h.empty()) throw DataError("no embedding for head token '" + head + "'");
    const auto r = store.find(relation);
    if (r.empty()) throw DataError("no embedding for relation token '" + relation + "'");
    std::copy(h.begin(), h.end(), out.begin());
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(h.size()));
}

CompositeVector compose(const EmbeddingStore& store, const std::string& head, const std::string& relation,
                        std::size_t class_id) {
    CompositeVector v;
    v.class_id = class_id;
    v.components.resize(2 * store.dim());
    compose_into(store, head, relation, v.components);
    return v;
}

ClassVectors materialize_class_vectors(const EmbeddingStore& store, const ClassIndex& ci) {
    ClassVectors out(ci.size());
    for (std::size_t c = 0; c < ci.size(); ++c) {
        const auto& cls = ci.classes[c];
        out[c].reserve(cls.pairs.size());
        for (const auto& p : cls.pairs) {
            try {
                out[c].push_back(compose(store, p.head, p.relation, c));
            } catch (const DataError& e) {
                throw DataError(std::string(e.what()) + " (class '" + cls.tail + "')");
            }
        }
    }
    return out;
}

}  // namespace kgcsg
