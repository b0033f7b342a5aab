#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glmb/gaussian.hpp"

namespace glmb {

// Object identity: birth timestep plus an index distinguishing same-time births.
struct Label {
    int s = 0;
    int iota = 0;
    auto operator<=>(const Label&) const = default;
};

std::string to_string(const Label& l);

// Label -> assignment as a sorted flat map. Association maps hold a handful
// of entries and are copied once per sample, so contiguous storage matters.
class EntryMap {
public:
    using value_type = std::pair<Label, int>;
    using iterator = std::vector<value_type>::iterator;
    using const_iterator = std::vector<value_type>::const_iterator;

    iterator begin() { return v_.begin(); }
    iterator end() { return v_.end(); }
    const_iterator begin() const { return v_.begin(); }
    const_iterator end() const { return v_.end(); }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    const_iterator find(const Label& l) const {
        const auto it = lower(l);
        return it != v_.end() && it->first == l ? it : v_.end();
    }
    iterator find(const Label& l) {
        const auto it = lower(l);
        return it != v_.end() && it->first == l ? it : v_.end();
    }
    std::size_t count(const Label& l) const { return find(l) == v_.end() ? 0 : 1; }
    int& operator[](const Label& l) {
        auto it = lower(l);
        if (it == v_.end() || it->first != l) it = v_.insert(it, {l, 0});
        return it->second;
    }
    std::size_t erase(const Label& l) {
        const auto it = find(l);
        if (it == v_.end()) return 0;
        v_.erase(it);
        return 1;
    }

    bool operator==(const EntryMap&) const = default;
    auto operator<=>(const EntryMap&) const = default;

private:
    const_iterator lower(const Label& l) const {
        return std::lower_bound(v_.begin(), v_.end(), l,
                                [](const value_type& e, const Label& x) { return e.first < x; });
    }
    iterator lower(const Label& l) {
        return std::lower_bound(v_.begin(), v_.end(), l,
                                [](const value_type& e, const Label& x) { return e.first < x; });
    }
    std::vector<value_type> v_;
};

// Association map gamma_j at one scan. Entries cover exactly the candidate
// domain B_j (birth labels with s == scan) plus the labels live at scan-1;
// every other label is implicitly -1. Values: -1 nonexistent, 0 misdetected,
// 1..m_count index of the generating measurement.
struct AssociationMap {
    int scan = 0;
    int m_count = 0;
    EntryMap entries;

    int alpha(const Label& l) const {
        auto it = entries.find(l);
        return it == entries.end() ? -1 : it->second;
    }
    std::set<Label> live_labels() const;
    bool positive_one_to_one() const;

    bool operator==(const AssociationMap&) const = default;
    auto operator<=>(const AssociationMap&) const = default;
};

// The association history gamma_{0:k} indexing one GLMB component.
// maps[j] is the map at scan j; scan 0 is always empty.
struct AssociationHistory {
    std::vector<AssociationMap> maps;

    AssociationHistory() { maps.resize(1); }

    int last_scan() const { return static_cast<int>(maps.size()) - 1; }
    int alpha(const Label& l, int scan) const {
        if (scan < 0 || scan > last_scan()) return -1;
        return maps[scan].alpha(l);
    }
    // Labels ever live anywhere in the history, sorted.
    std::vector<Label> ever_live_labels() const;

    std::string to_text() const;
    static AssociationHistory from_text(const std::string& text);

    bool operator==(const AssociationHistory&) const = default;
    auto operator<=>(const AssociationHistory&) const = default;
};

std::set<Label> live_labels(const AssociationMap& map);

// True iff every map is positive 1-1, entry domains are restricted to
// B_j plus L(gamma_{j-1}), alphas are in range, and dead labels stay dead.
bool validate_history(const AssociationHistory& gamma);

// Earliest and latest live scans of ell, or absent if never live.
std::optional<std::pair<int, int>> lifespan(const AssociationHistory& gamma, const Label& ell);

// Labeled multi-object state at one scan (ground truth or estimate).
struct LabeledStateSet {
    int scan = 0;
    std::vector<std::pair<Vec4, Label>> items;
};

}  // namespace glmb
