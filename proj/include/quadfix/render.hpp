#pragma once

// Matrix renderers: aligned plain text with the block rules of a
// lambda-decomposition, LaTeX in the ruled-pmatrix style, and JSON as
// nested arrays of entry strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "quadfix/matrix.hpp"
#include "quadfix/partition.hpp"

namespace quadfix {

namespace detail {

inline bool is_block_boundary(const BlockGrid* grid, int index) {
    if (!grid) return false;
    for (std::size_t b = 1; b + 1 < grid->offsets.size(); ++b)
        if (grid->offsets[b] == index) return true;
    return false;
}

inline std::string latex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_')
            out += "\\_";
        else
            out += c;
    }
    return out;
}

}  // namespace detail

template <typename R>
std::string matrix_text(const RingMatrix<R>& m, const BlockGrid* grid = nullptr) {
    std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(m.rows()));
    std::vector<std::size_t> width(static_cast<std::size_t>(m.cols()), 0);
    for (int i = 0; i < m.rows(); ++i) {
        cells[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j) {
            std::string s = Ring<R>::to_string(m.at(i, j));
            width[static_cast<std::size_t>(j)] =
                std::max(width[static_cast<std::size_t>(j)], s.size());
            cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(s);
        }
    }
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        if (detail::is_block_boundary(grid, i)) {
            for (int j = 0; j < m.cols(); ++j) {
                if (j > 0) out += detail::is_block_boundary(grid, j) ? "-+-" : "--";
                out += std::string(width[static_cast<std::size_t>(j)], '-');
            }
            out += "\n";
        }
        for (int j = 0; j < m.cols(); ++j) {
            if (j > 0) out += detail::is_block_boundary(grid, j) ? " | " : "  ";
            const std::string& s = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            out += std::string(width[static_cast<std::size_t>(j)] - s.size(), ' ') + s;
        }
        out += "\n";
    }
    return out;
}

template <typename R>
std::string matrix_latex(const RingMatrix<R>& m, const BlockGrid* grid = nullptr) {
    std::string out = "\\begin{pmatrix}\n";
    for (int i = 0; i < m.rows(); ++i) {
        if (detail::is_block_boundary(grid, i)) out += "\\hline\n";
        for (int j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += " & ";
                if (detail::is_block_boundary(grid, j)) out += "\\vline & ";
            }
            out += detail::latex_escape(Ring<R>::to_string(m.at(i, j)));
        }
        out += " \\\\\n";
    }
    out += "\\end{pmatrix}\n";
    return out;
}

template <typename R>
nlohmann::ordered_json matrix_json(const RingMatrix<R>& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(Ring<R>::to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace quadfix
