#include "glmb/label.hpp"

#include <sstream>
#include <stdexcept>

namespace glmb {

std::string to_string(const Label& l) {
    return std::to_string(l.s) + "." + std::to_string(l.iota);
}

std::set<Label> AssociationMap::live_labels() const {
    std::set<Label> out;
    for (const auto& [l, a] : entries)
        if (a >= 0) out.insert(l);
    return out;
}

bool AssociationMap::positive_one_to_one() const {
    std::set<int> used;
    for (const auto& [l, a] : entries) {
        if (a > 0 && !used.insert(a).second) return false;
    }
    return true;
}

std::set<Label> live_labels(const AssociationMap& map) {
    return map.live_labels();
}

std::vector<Label> AssociationHistory::ever_live_labels() const {
    std::set<Label> out;
    for (const auto& m : maps)
        for (const auto& [l, a] : m.entries)
            if (a >= 0) out.insert(l);
    return {out.begin(), out.end()};
}

bool validate_history(const AssociationHistory& gamma) {
    if (gamma.maps.empty()) return false;
    if (!gamma.maps[0].entries.empty()) return false;
    for (int j = 0; j <= gamma.last_scan(); ++j) {
        const auto& m = gamma.maps[j];
        if (m.scan != j) return false;
        if (!m.positive_one_to_one()) return false;
        const std::set<Label> prev_live = j > 0 ? gamma.maps[j - 1].live_labels() : std::set<Label>{};
        for (const auto& [l, a] : m.entries) {
            if (a < -1 || a > m.m_count) return false;
            const bool is_birth = l.s == j;
            if (!is_birth && !prev_live.count(l)) return false;
        }
        // every label live at j-1 must appear in the domain at j
        for (const auto& l : prev_live)
            if (!m.entries.count(l)) return false;
    }
    // dead stays dead over derived alphas
    for (const auto& l : gamma.ever_live_labels()) {
        bool was_live = false, died = false;
        for (int j = 0; j <= gamma.last_scan(); ++j) {
            const int a = gamma.alpha(l, j);
            if (a >= 0) {
                if (died) return false;
                was_live = true;
            } else if (was_live) {
                died = true;
            }
        }
    }
    return true;
}

std::optional<std::pair<int, int>> lifespan(const AssociationHistory& gamma, const Label& ell) {
    int s = -1, t = -1;
    for (int j = 0; j <= gamma.last_scan(); ++j) {
        if (gamma.alpha(ell, j) >= 0) {
            if (s < 0) s = j;
            t = j;
        }
    }
    if (s < 0) return std::nullopt;
    return std::make_pair(s, t);
}

std::string AssociationHistory::to_text() const {
    std::ostringstream os;
    for (const auto& m : maps) {
        os << m.scan << '/' << m.m_count << ':';
        bool first = true;
        for (const auto& [l, a] : m.entries) {
            if (!first) os << ',';
            first = false;
            os << ' ' << to_string(l) << '=' << a;
        }
        os << '\n';
    }
    return os.str();
}

AssociationHistory AssociationHistory::from_text(const std::string& text) {
    AssociationHistory g;
    g.maps.clear();
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        AssociationMap m;
        std::istringstream ls(line);
        char sep;
        if (!(ls >> m.scan >> sep >> m.m_count) || sep != '/')
            throw std::runtime_error("bad history line: " + line);
        if (!(ls >> sep) || sep != ':') throw std::runtime_error("bad history line: " + line);
        std::string item;
        while (std::getline(ls, item, ',')) {
            Label l;
            int a;
            char dot, eq;
            std::istringstream it(item);
            if (!(it >> l.s >> dot >> l.iota >> eq >> a) || dot != '.' || eq != '=')
                throw std::runtime_error("bad history entry: " + item);
            m.entries[l] = a;
        }
        g.maps.push_back(std::move(m));
    }
    if (g.maps.empty()) g.maps.resize(1);
    return g;
}

}  // namespace glmb
