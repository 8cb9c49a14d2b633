#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

// Order-d Latin square: a d x d grid over 0..d-1 in which every row and
// every column is a permutation.
struct LatinSquare {
    int order = 0;
    std::vector<int> grid;  // row-major

    int at(int row, int col) const {
        return grid[static_cast<std::size_t>(row) * static_cast<std::size_t>(order) +
                    static_cast<std::size_t>(col)];
    }

    // Throws InvariantError unless every row and column is a permutation.
    void validate() const {
        if (order < 1 || grid.size() != static_cast<std::size_t>(order) * static_cast<std::size_t>(order))
            throw InvariantError("latin square grid size does not match its order");
        for (int v : grid)
            if (v < 0 || v >= order)
                throw InvariantError("latin square entry " + std::to_string(v) +
                                     " outside 0.." + std::to_string(order - 1));
        std::vector<bool> seen(static_cast<std::size_t>(order));
        for (int r = 0; r < order; ++r) {
            seen.assign(seen.size(), false);
            for (int c = 0; c < order; ++c) {
                if (seen[static_cast<std::size_t>(at(r, c))])
                    throw InvariantError("row " + std::to_string(r) + " repeats symbol " +
                                         std::to_string(at(r, c)));
                seen[static_cast<std::size_t>(at(r, c))] = true;
            }
        }
        for (int c = 0; c < order; ++c) {
            seen.assign(seen.size(), false);
            for (int r = 0; r < order; ++r) {
                if (seen[static_cast<std::size_t>(at(r, c))])
                    throw InvariantError("column " + std::to_string(c) + " repeats symbol " +
                                         std::to_string(at(r, c)));
                seen[static_cast<std::size_t>(at(r, c))] = true;
            }
        }
    }
};

// True when the d^2 ordered pairs (a(i,j), b(i,j)) are pairwise distinct.
inline bool mutually_orthogonal(const LatinSquare& a, const LatinSquare& b) {
    if (a.order != b.order) return false;
    const int d = a.order;
    std::vector<bool> seen(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), false);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            const std::size_t key = static_cast<std::size_t>(a.at(r, c)) * static_cast<std::size_t>(d) +
                                    static_cast<std::size_t>(b.at(r, c));
            if (seen[key]) return false;
            seen[key] = true;
        }
    return true;
}

// The cyclic square L(i,j) = (i + a*j) mod n; Latin iff gcd(a, n) = 1.
inline LatinSquare cyclic_latin(int n, int a) {
    if (n < 1) throw ArgumentError("order must be positive");
    LatinSquare L;
    L.order = n;
    L.grid.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            L.grid[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(c)] = ((r + a * c) % n + n) % n;
    L.validate();
    return L;
}

// Text format: d lines, each d space-separated base-10 integers in [0, d).
// Structural problems are parse errors; a well-formed grid that is not a
// Latin square fails validate() with an invariant error.
inline LatinSquare parse_latin(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank line
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("latin square token '" + tok + "' is not an integer");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("latin square file is empty");
    const int d = static_cast<int>(rows.size());
    LatinSquare L;
    L.order = d;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != d)
            throw ParseError("latin square must be square: got a row of " +
                             std::to_string(row.size()) + " entries in an order-" +
                             std::to_string(d) + " file");
        L.grid.insert(L.grid.end(), row.begin(), row.end());
    }
    L.validate();
    return L;
}

inline LatinSquare parse_latin(const std::string& text) {
    std::istringstream in(text);
    return parse_latin(in);
}

inline std::string format_latin(const LatinSquare& L) {
    std::ostringstream out;
    for (int r = 0; r < L.order; ++r) {
        for (int c = 0; c < L.order; ++c) {
            if (c) out << ' ';
            out << L.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ipt
