#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lew/core_model.hpp"

namespace lew::test {

inline Meaning meaning(std::initializer_list<Token> tokens) { return Meaning(std::vector<Token>(tokens)); }

inline Form form(std::initializer_list<std::uint16_t> ids) {
    std::vector<Phoneme> p;
    for (auto id : ids) p.push_back(Phoneme{id});
    return Form(std::move(p));
}

// Upper 0.999 quantiles of the chi-square distribution, from scipy.stats.chi2.ppf.
inline constexpr double kChi2Crit999Df1 = 10.827566170662733;
inline constexpr double kChi2Crit999Df3 = 16.26623619623813;
inline constexpr double kChi2Crit999Df5 = 20.515005652432873;
inline constexpr double kChi2Crit999Df7 = 24.321886347856854;
inline constexpr double kChi2Crit999Df99 = 148.23035916510173;

inline double chi_square(std::span<const std::size_t> observed, std::span<const double> probabilities) {
    std::size_t total = 0;
    for (auto o : observed) total += o;
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        const double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace lew::test
