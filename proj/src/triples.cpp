#include "kgcsg/triples.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "kgcsg/error.hpp"

namespace kgcsg {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string encode_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (is_space(c)) {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

TripleSet::TripleSet(std::vector<Triple> triples) {
    triples_.reserve(triples.size());
    for (auto& t : triples) append(std::move(t));
}

void TripleSet::append(Triple t) {
    entities_.insert(t.head);
    entities_.insert(t.tail);
    relations_.insert(t.relation);
    triples_.push_back(std::move(t));
}

std::size_t ClassIndex::pair_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.pairs.size();
    return n;
}

std::size_t parse_triples_into(std::istream& in, TripleSet& out) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t read = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (trim(body).empty()) continue;

        std::string_view fields[3];
        std::size_t nfields = 0;
        std::size_t start = 0;
        for (;;) {
            const auto tab = body.find('\t', start);
            const auto piece = body.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
            if (nfields < 3) fields[nfields] = piece;
            ++nfields;
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (nfields != 3) {
            throw ParseError(lineno, "expected 3 tab-separated fields, found " + std::to_string(nfields));
        }
        Triple t;
        std::string* dst[3] = {&t.head, &t.relation, &t.tail};
        static constexpr const char* names[3] = {"head", "relation", "tail"};
        for (int f = 0; f < 3; ++f) {
            const auto v = trim(fields[f]);
            if (v.empty()) throw ParseError(lineno, std::string("empty ") + names[f] + " field");
            *dst[f] = encode_token(v);
        }
        out.append(std::move(t));
        ++read;
    }
    if (in.bad()) throw DataError("read failure after line " + std::to_string(lineno));
    return read;
}

TripleSet parse_triples(std::istream& in) {
    TripleSet ts;
    if (parse_triples_into(in, ts) == 0) throw DataError("no triples");
    return ts;
}

TripleSet read_triple_files(const std::vector<std::string>& paths) {
    if (paths.empty()) throw ConfigError("no triple files given");
    TripleSet ts;
    for (const auto& p : paths) {
        std::ifstream in(p);
        if (!in) throw DataError("cannot open triple file '" + p + "'");
        try {
            parse_triples_into(in, ts);
        } catch (const ParseError& e) {
            throw ParseError(e.line(), e.detail(), p);
        }
    }
    if (ts.empty()) throw DataError("no triples");
    return ts;
}

ClassIndex group_by_tail(const TripleSet& ts) {
    ClassIndex ci;
    std::unordered_map<std::string_view, std::size_t> slot;
    for (const auto& t : ts.triples()) {
        auto [it, fresh] = slot.try_emplace(t.tail, ci.classes.size());
        if (fresh) ci.classes.push_back(TailClass{t.tail, {}});
        ci.classes[it->second].pairs.push_back(HeadRelation{t.head, t.relation});
    }
    return ci;
}

DatasetStats dataset_stats(const TripleSet& ts) {
    DatasetStats s;
    s.entity_count = ts.entities().size();
    s.relation_count = ts.relations().size();
    s.triple_count = ts.size();
    std::set<std::string_view> tails;
    for (const auto& t : ts.triples()) tails.insert(t.tail);
    s.class_count = tails.size();
    return s;
}

ClassIndex filter_classes(const ClassIndex& ci, std::size_t min_pairs, std::optional<std::size_t> max_classes) {
    if (min_pairs < 1) throw ConfigError("min_pairs must be at least 1");
    if (max_classes && *max_classes < 1) throw ConfigError("max_classes must be at least 1");

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ci.classes.size(); ++i) {
        if (ci.classes[i].pairs.size() >= min_pairs) keep.push_back(i);
    }
    if (max_classes && keep.size() > *max_classes) {
        std::stable_sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
            return ci.classes[a].pairs.size() > ci.classes[b].pairs.size();
        });
        keep.resize(*max_classes);
        std::sort(keep.begin(), keep.end());
    }
    if (keep.empty()) throw DataError("no classes survive filter");

    ClassIndex out;
    out.classes.reserve(keep.size());
    for (auto i : keep) out.classes.push_back(ci.classes[i]);
    return out;
}

}  // namespace kgcsg
