#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kgcsg {

struct Triple {
    std::string head;
    std::string relation;
    std::string tail;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Triples in file order plus the entity and relation vocabularies they use.
class TripleSet {
public:
    TripleSet() = default;
    explicit TripleSet(std::vector<Triple> triples);

    void append(Triple t);

    const std::vector<Triple>& triples() const noexcept { return triples_; }
    const std::set<std::string>& entities() const noexcept { return entities_; }
    const std::set<std::string>& relations() const noexcept { return relations_; }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }

private:
    std::vector<Triple> triples_;
    std::set<std::string> entities_;
    std::set<std::string> relations_;
};

struct HeadRelation {
    std::string head;
    std::string relation;

    friend bool operator==(const HeadRelation&, const HeadRelation&) = default;
};

/// One tail entity and every (head, relation) pair that points to it.
struct TailClass {
    std::string tail;
    std::vector<HeadRelation> pairs;
};

/// Classes ordered by first appearance of their tail in the source triples.
struct ClassIndex {
    std::vector<TailClass> classes;

    std::size_t size() const noexcept { return classes.size(); }
    std::size_t pair_count() const noexcept;
};

struct DatasetStats {
    std::size_t entity_count = 0;
    std::size_t relation_count = 0;
    std::size_t triple_count = 0;
    std::size_t class_count = 0;

    friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

/// Replaces whitespace inside a token with %XX escapes so tokens stay
/// whitespace-free in the embedding file format.
std::string encode_token(std::string_view raw);

/// Reads `head<TAB>relation<TAB>tail` lines. Blank lines are skipped, fields
/// are trimmed. Throws ParseError on a malformed line and DataError("no
/// triples") when nothing was read.
TripleSet parse_triples(std::istream& in);

/// Appends the triples of `in` to `out`; used to concatenate dataset splits.
/// Returns the number of triples read.
std::size_t parse_triples_into(std::istream& in, TripleSet& out);

TripleSet read_triple_files(const std::vector<std::string>& paths);

ClassIndex group_by_tail(const TripleSet& ts);

DatasetStats dataset_stats(const TripleSet& ts);

/// Keeps classes with at least `min_pairs` pairs; with `max_classes`, keeps
/// only the largest ones (ties resolved by class order). Order is preserved.
ClassIndex filter_classes(const ClassIndex& ci, std::size_t min_pairs,
                          std::optional<std::size_t> max_classes = std::nullopt);

}  // namespace kgcsg
