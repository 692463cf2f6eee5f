#pragma once

// Polynomial observables in Ginibre matrices Z_1..Z_n and their conjugates,
// written as sums of products of traces of words, and their exact Gaussian
// expectation under <(Z_a)_{ij} conj((Z_a)_{kl})> = delta_{ik} delta_{jl} / N.
//
// Exact evaluation contracts every Z_a with a Z_a^dagger in all possible
// ways. After a contraction the constant blocks sitting between random
// letters close into index loops; each loop contributes a trace.

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taulab/matrix.hpp"
#include "taulab/parallel.hpp"
#include "taulab/partitions.hpp"
#include "taulab/rational.hpp"
#include "taulab/ribbon.hpp"
#include "taulab/symfunc.hpp"

namespace taulab {

struct Letter {
    enum class Kind { Z, ZDagger, Constant };
    Kind kind;
    int index;  // matrix label a >= 1 for Z / Z^dagger, slot in the constant table otherwise

    static Letter z(int a) { return {Kind::Z, a}; }
    static Letter z_dagger(int a) { return {Kind::ZDagger, a}; }
    static Letter constant(int slot) { return {Kind::Constant, slot}; }
    [[nodiscard]] bool random() const { return kind != Kind::Constant; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// coeff * prod_k tr(word_k)
template <typename T>
struct ObservableTerm {
    T coeff;
    std::vector<Word> traces;
};

/// A finite sum of trace products over a shared table of constant matrices.
template <typename T>
class Observable {
public:
    Observable() = default;

    /// The constant 1.
    static Observable one() {
        Observable o;
        o.terms_.push_back({ScalarTraits<T>::one(), {}});
        return o;
    }

    int add_constant(Matrix<T> m) {
        constants_.push_back(std::move(m));
        return static_cast<int>(constants_.size() - 1);
    }

    void add_term(T coeff, std::vector<Word> traces) { terms_.push_back({std::move(coeff), std::move(traces)}); }

    [[nodiscard]] const std::vector<Matrix<T>>& constants() const { return constants_; }
    [[nodiscard]] const std::vector<ObservableTerm<T>>& terms() const { return terms_; }

    /// Largest Z label used.
    [[nodiscard]] int ensemble_size() const {
        int n = 0;
        for (const auto& t : terms_)
            for (const auto& w : t.traces)
                for (const auto& l : w)
                    if (l.random()) n = std::max(n, l.index);
        return n;
    }

    /// Product of observables; constants of `o` are appended to this table.
    friend Observable operator*(const Observable& a, const Observable& b) {
        Observable r;
        r.constants_ = a.constants_;
        const int shift = static_cast<int>(a.constants_.size());
        r.constants_.insert(r.constants_.end(), b.constants_.begin(), b.constants_.end());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                std::vector<Word> traces = ta.traces;
                for (Word w : tb.traces) {
                    for (auto& l : w)
                        if (!l.random()) l.index += shift;
                    traces.push_back(std::move(w));
                }
                r.terms_.push_back({ta.coeff * tb.coeff, std::move(traces)});
            }
        return r;
    }

    friend Observable operator+(const Observable& a, const Observable& b) {
        Observable r = a * one();
        const int shift = static_cast<int>(r.constants_.size());
        r.constants_.insert(r.constants_.end(), b.constants_.begin(), b.constants_.end());
        for (auto t : b.terms_) {
            for (auto& w : t.traces)
                for (auto& l : w)
                    if (!l.random()) l.index += shift;
            r.terms_.push_back(std::move(t));
        }
        return r;
    }

    friend Observable operator*(const T& s, Observable o) {
        for (auto& t : o.terms_) t.coeff = s * t.coeff;
        return o;
    }

private:
    std::vector<Matrix<T>> constants_;
    std::vector<ObservableTerm<T>> terms_;
};

/// The word Z_{h_1} C_{h_1} Z_{h_2} C_{h_2} ... for a half-edge cycle; the
/// source matrices are appended to `obs`'s constant table.
template <typename T>
Word dressed_word(const HalfEdgeCycle& cycle, const SourceAssignment<T>& src, Observable<T>& obs) {
    Word w;
    for (int h : cycle) {
        w.push_back(h > 0 ? Letter::z(h) : Letter::z_dagger(-h));
        w.push_back(Letter::constant(obs.add_constant(src.at(h))));
    }
    return w;
}

/// p_mu(W) = prod_j tr(W^{mu_j}) for the word W, as a single-term observable.
template <typename T>
Observable<T> power_sum_observable(const Partition& mu, const HalfEdgeCycle& cycle, const SourceAssignment<T>& src,
                                   const T& coeff = ScalarTraits<T>::one()) {
    Observable<T> obs;
    const Word w = dressed_word(cycle, src, obs);
    std::vector<Word> traces;
    for (int part : mu.parts()) {
        Word pw;
        for (int k = 0; k < part; ++k) pw.insert(pw.end(), w.begin(), w.end());
        traces.push_back(std::move(pw));
    }
    obs.add_term(coeff, std::move(traces));
    return obs;
}

/// s_lambda(W) expanded in power sums of the word W.
template <typename T>
Observable<T> schur_observable(const Partition& lambda, const HalfEdgeCycle& cycle, const SourceAssignment<T>& src) {
    Observable<T> obs;
    const Word w = dressed_word(cycle, src, obs);
    const PowerSumPolynomial s = schur_in_powersums(lambda, lambda.weight());
    for (const auto& [mu, c] : s.terms()) {
        std::vector<Word> traces;
        for (int part : mu.parts()) {
            Word pw;
            for (int k = 0; k < part; ++k) pw.insert(pw.end(), w.begin(), w.end());
            traces.push_back(std::move(pw));
        }
        obs.add_term(ScalarTraits<T>::from_rational(c), std::move(traces));
    }
    return obs;
}

/// Parses sums of trace products such as "tr(Z1 C1 Zd1 C-1) tr(Z2) + 1/2 tr(Z1 Zd1)".
/// Letters: Z<a>, Zd<a> (the adjoint of Z<a>), C<h> (source matrix of half-edge h).
/// A term may start with a rational coefficient.
template <typename T>
Observable<T> parse_observable(std::string_view text, const SourceAssignment<T>& src) {
    Observable<T> obs;
    std::map<int, int> slot_of;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("observable, column " + std::to_string(pos + 1) + ": " + why);
    };
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto integer = [&]() -> int {
        const std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || !std::isdigit(static_cast<unsigned char>(text[pos - 1]))) fail("expected an integer");
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    bool expect_term = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        if (!expect_term) {
            if (text[pos] != '+') fail("expected '+' between terms");
            ++pos;
            skip();
        }
        T coeff = ScalarTraits<T>::one();
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != 't' && text[pos] != '+') ++pos;
        const std::string prefix(text.substr(start, pos - start));
        if (prefix.find_first_not_of(' ') != std::string::npos) {
            std::string trimmed = prefix;
            while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '*')) trimmed.pop_back();
            try {
                coeff = ScalarTraits<T>::from_rational(parse_rational(trimmed));
            } catch (const std::invalid_argument&) {
                pos = start;
                fail("bad coefficient '" + trimmed + "'");
            }
        }
        std::vector<Word> traces;
        while (true) {
            skip();
            if (pos >= text.size() || text[pos] == '+') break;
            if (text.substr(pos, 3) != "tr(") fail("expected 'tr('");
            pos += 3;
            Word w;
            while (true) {
                skip();
                if (pos >= text.size()) fail("unterminated trace");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                if (text.substr(pos, 2) == "Zd") {
                    pos += 2;
                    const int a = integer();
                    if (a < 1) fail("matrix label must be positive");
                    w.push_back(Letter::z_dagger(a));
                } else if (text[pos] == 'Z') {
                    ++pos;
                    const int a = integer();
                    if (a < 1) fail("matrix label must be positive");
                    w.push_back(Letter::z(a));
                } else if (text[pos] == 'C') {
                    ++pos;
                    const int h = integer();
                    auto it = slot_of.find(h);
                    if (it == slot_of.end()) {
                        if (!src.sources.count(h)) fail("no source matrix C" + std::to_string(h));
                        it = slot_of.emplace(h, obs.add_constant(src.at(h))).first;
                    }
                    w.push_back(Letter::constant(it->second));
                } else {
                    fail(std::string("unexpected character '") + text[pos] + "'");
                }
            }
            traces.push_back(std::move(w));
        }
        if (traces.empty() && prefix.find_first_not_of(' ') == std::string::npos) fail("empty term");
        obs.add_term(std::move(coeff), std::move(traces));
        expect_term = false;
    }
    if (expect_term) fail("empty observable");
    return obs;
}

/// Bounds for exact pairing enumeration.
struct WickLimits {
    int max_label_degree = 4;        // Z_a occurrences per label; k! pairings each
    long long max_pairings = 1'000'000;  // per term, product over labels
};

template <typename T>
struct WickResult {
    T value;
    bool balanced = true;  // false if some term had unequal Z / Z^dagger counts (and so vanished)
};

namespace detail {

/// Product of the constant letters in [begin, end) of a word (cyclic indices).
template <typename T>
std::optional<Matrix<T>> constant_block(const Word& w, std::size_t begin, std::size_t count,
                                        const std::vector<Matrix<T>>& constants) {
    std::optional<Matrix<T>> m;
    for (std::size_t k = 0; k < count; ++k) {
        const Letter& l = w[(begin + k) % w.size()];
        const auto& c = constants.at(static_cast<std::size_t>(l.index));
        m = m ? *m * c : c;
    }
    return m;
}

template <typename T>
T trace_of_constants(const Word& w, const std::vector<Matrix<T>>& constants, std::size_t size) {
    auto m = constant_block(w, 0, w.size(), constants);
    return m ? m->trace() : ScalarTraits<T>::from_rational(Rational(static_cast<long>(size)));
}

template <typename T>
T wick_term(const ObservableTerm<T>& term, const std::vector<Matrix<T>>& constants, int size,
            const WickLimits& limits, bool& balanced) {
    const auto n = static_cast<std::size_t>(size);
    T prefactor = term.coeff;

    // Random letters in order of appearance, with the block that follows each.
    struct Site {
        Letter letter;
        std::size_t next;  // next random site in the same trace (cyclically)
        std::optional<Matrix<T>> block;
    };
    std::vector<Site> sites;
    for (const Word& w : term.traces) {
        std::vector<std::size_t> pos;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k].random()) pos.push_back(k);
        if (pos.empty()) {
            prefactor *= trace_of_constants(w, constants, n);
            continue;
        }
        const std::size_t first = sites.size();
        for (std::size_t j = 0; j < pos.size(); ++j) {
            const std::size_t here = pos[j];
            const std::size_t there = j + 1 < pos.size() ? pos[j + 1] : pos[0] + w.size();
            sites.push_back({w[here], first + (j + 1) % pos.size(), constant_block(w, here + 1, there - here - 1, constants)});
        }
    }
    if (prefactor == ScalarTraits<T>::zero()) return prefactor;

    std::map<int, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> by_label;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        auto& entry = by_label[sites[s].letter.index];
        (sites[s].letter.kind == Letter::Kind::Z ? entry.first : entry.second).push_back(s);
    }
    long long pairings = 1;
    for (const auto& [label, zs] : by_label) {
        if (zs.first.size() != zs.second.size()) {
            balanced = false;
            return ScalarTraits<T>::zero();
        }
        if (static_cast<int>(zs.first.size()) > limits.max_label_degree)
            throw std::invalid_argument("Wick query too large: Z_" + std::to_string(label) + " appears " +
                                        std::to_string(zs.first.size()) + " times (limit " +
                                        std::to_string(limits.max_label_degree) + ")");
        for (std::size_t k = 2; k <= zs.first.size(); ++k) pairings *= static_cast<long long>(k);
    }
    if (pairings > limits.max_pairings) throw std::invalid_argument("Wick query too large: too many pairings");

    const std::size_t pairs = sites.size() / 2;
    T inv_n_power = ScalarTraits<T>::from_rational(pow(Rational(size), -static_cast<long>(pairs)));

    std::vector<std::vector<std::size_t>> perms;  // current matching of Z^dagger to Z per label
    std::vector<const std::pair<std::vector<std::size_t>, std::vector<std::size_t>>*> labels;
    for (const auto& [label, zs] : by_label) {
        labels.push_back(&zs);
        std::vector<std::size_t> p(zs.first.size());
        std::iota(p.begin(), p.end(), 0);
        perms.push_back(std::move(p));
    }

    std::vector<std::size_t> partner(sites.size());
    std::vector<bool> visited(sites.size());
    T total = ScalarTraits<T>::zero();
    while (true) {
        for (std::size_t l = 0; l < labels.size(); ++l) {
            const auto& [zs, zds] = *labels[l];
            for (std::size_t k = 0; k < zs.size(); ++k) {
                partner[zs[k]] = zds[perms[l][k]];
                partner[zds[perms[l][k]]] = zs[k];
            }
        }
        // Loops of u -> partner(next(u)); each loop is the trace of its blocks.
        std::fill(visited.begin(), visited.end(), false);
        T value = ScalarTraits<T>::one();
        for (std::size_t s = 0; s < sites.size() && value != ScalarTraits<T>::zero(); ++s) {
            if (visited[s]) continue;
            std::optional<Matrix<T>> loop;
            for (std::size_t u = s; !visited[u]; u = partner[sites[u].next]) {
                visited[u] = true;
                if (sites[u].block) loop = loop ? *loop * *sites[u].block : *sites[u].block;
            }
            value *= loop ? loop->trace() : ScalarTraits<T>::from_rational(Rational(size));
        }
        total += value;

        std::size_t l = 0;
        for (; l < perms.size(); ++l)
            if (std::next_permutation(perms[l].begin(), perms[l].end())) break;
        if (l == perms.size()) break;
    }
    return prefactor * inv_n_power * total;
}

}  // namespace detail

/// Exact <obs> for n independent N x N Ginibre matrices.
template <typename T>
WickResult<T> wick_exact(const Observable<T>& obs, int size, const WickLimits& limits = {}) {
    if (size < 1) throw std::invalid_argument("matrix size must be positive");
    const auto& terms = obs.terms();
    std::vector<char> balanced(terms.size(), 1);
    std::vector<T> values(terms.size(), ScalarTraits<T>::zero());
    parallel_for(terms.size(), [&](std::size_t k) {
        bool ok = true;
        values[k] = detail::wick_term(terms[k], obs.constants(), size, limits, ok);
        balanced[k] = ok ? 1 : 0;
    });
    WickResult<T> r{ScalarTraits<T>::zero(), true};
    for (std::size_t k = 0; k < terms.size(); ++k) {
        r.value += values[k];
        r.balanced = r.balanced && balanced[k];
    }
    return r;
}

/// Value of the observable at concrete matrices Z_1..Z_n.
/// `constants` is the observable's constant table converted to double precision.
template <typename T>
std::complex<double> evaluate_observable(const Observable<T>& obs, const std::vector<Matrix<std::complex<double>>>& z,
                                         const std::vector<Matrix<std::complex<double>>>& constants, std::size_t size) {
    using U = std::complex<double>;
    U total = 0.0;
    for (const auto& term : obs.terms()) {
        U value = ScalarTraits<T>::to_complex(term.coeff);
        for (const Word& w : term.traces) {
            std::optional<Matrix<U>> m;
            for (const Letter& l : w) {
                const Matrix<U>* factor = nullptr;
                Matrix<U> adj;
                switch (l.kind) {
                    case Letter::Kind::Z:
                        factor = &z.at(static_cast<std::size_t>(l.index - 1));
                        break;
                    case Letter::Kind::ZDagger:
                        adj = z.at(static_cast<std::size_t>(l.index - 1)).adjoint();
                        factor = &adj;
                        break;
                    case Letter::Kind::Constant:
                        factor = &constants.at(static_cast<std::size_t>(l.index));
                        break;
                }
                m = m ? *m * *factor : *factor;
            }
            value *= m ? m->trace() : U(static_cast<double>(size));
        }
        total += value;
    }
    return total;
}

}  // namespace taulab
