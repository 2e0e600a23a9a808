#include "rqc/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rqc/numeric.hpp"

namespace rqc {

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // descending parts, depth-first
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, maxpart); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int m = size();
    std::vector<char> seen(m, 0);
    for (int v : images_) {
        if (v < 0 || v >= m || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int m) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(size());
    for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

int Permutation::cycle_count() const {
    int count = 0;
    std::vector<char> seen(size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        ++count;
        for (int j = i; !seen[j]; j = images_[j]) seen[j] = 1;
    }
    return count;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        for (int j = i; !seen[j]; j = images_[j]) {
            seen[j] = 1;
            cyc.push_back(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> type;
    for (const auto& c : cycles()) type.push_back(static_cast<int>(c.size()));
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> im(a.size());
    for (int i = 0; i < a.size(); ++i) im[i] = a(b(i));
    return Permutation(std::move(im));
}

int distance(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw std::invalid_argument("distance: size mismatch");
    return (s.inverse() * t).length();
}

bool is_geodesic(const Permutation& a, const Permutation& target) {
    if (a.size() != target.size()) throw std::invalid_argument("is_geodesic: size mismatch");
    return a.length() + distance(a, target) == target.length();
}

std::string Permutation::to_cycle_string() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& cyc : cycles()) {
        if (cyc.size() < 2) continue;
        any = true;
        os << '(';
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            if (j) os << ' ';
            os << cyc[j] + 1;
        }
        os << ')';
    }
    if (!any) return "()";
    return os.str();
}

Permutation Permutation::from_cycle_string(int m, const std::string& text) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    std::vector<int> cyc;
    bool in_cycle = false;
    std::size_t pos = 0;
    auto apply_cycle = [&]() {
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            int from = cyc[j], to = cyc[(j + 1) % cyc.size()];
            im[from] = to;
        }
    };
    while (pos < text.size()) {
        char ch = text[pos];
        if (ch == '(') {
            if (in_cycle) throw std::invalid_argument("cycle parse: nested '('");
            in_cycle = true;
            cyc.clear();
            ++pos;
        } else if (ch == ')') {
            if (!in_cycle) throw std::invalid_argument("cycle parse: stray ')'");
            if (cyc.size() >= 2) apply_cycle();
            in_cycle = false;
            ++pos;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t len = 0;
            int v = std::stoi(text.substr(pos), &len);
            if (!in_cycle) throw std::invalid_argument("cycle parse: number outside cycle");
            if (v < 1 || v > m) throw std::invalid_argument("cycle parse: point out of range");
            cyc.push_back(v - 1);
            pos += len;
        } else if (ch == ' ' || ch == ',' || ch == '\t') {
            ++pos;
        } else {
            throw std::invalid_argument(std::string("cycle parse: unexpected character '") + ch + "'");
        }
    }
    if (in_cycle) throw std::invalid_argument("cycle parse: unterminated cycle");
    // validate bijection via constructor; duplicated points across cycles
    // show up here as a non-bijective image vector
    std::vector<char> seen(m, 0);
    for (int v : im) {
        if (seen[v]) throw std::invalid_argument("cycle parse: repeated point");
        seen[v] = 1;
    }
    return Permutation(std::move(im));
}

Permutation canonical(CanonicalPerm kind, int p) {
    if (p < 1) throw std::invalid_argument("canonical: p must be >= 1");
    switch (kind) {
        case CanonicalPerm::Gamma: {
            std::vector<int> im(p);
            for (int i = 0; i < p; ++i) im[i] = (i + p - 1) % p;  // i -> i-1 (mod p)
            return Permutation(std::move(im));
        }
        case CanonicalPerm::Gamma2: {
            std::vector<int> im(2 * p);
            for (int i = 0; i < p; ++i) {
                im[i] = (i + p - 1) % p;
                im[p + i] = p + (i + p - 1) % p;
            }
            return Permutation(std::move(im));
        }
        case CanonicalPerm::GammaTilde: {
            // (p^T ... 2^T 1^T 1^B 2^B ... p^B) as one 2p-cycle
            std::vector<int> im(2 * p);
            for (int i = 1; i < p; ++i) im[i] = i - 1;       // i^T -> (i-1)^T
            im[0] = p;                                       // 1^T -> 1^B
            for (int i = 0; i + 1 < p; ++i) im[p + i] = p + i + 1;  // i^B -> (i+1)^B
            im[2 * p - 1] = p - 1;                           // p^B -> p^T
            return Permutation(std::move(im));
        }
        case CanonicalPerm::Delta: {
            std::vector<int> im(2 * p);
            for (int i = 0; i < p; ++i) {
                im[i] = p + i;
                im[p + i] = i;
            }
            return Permutation(std::move(im));
        }
    }
    throw std::logic_error("canonical: unknown kind");
}

Permutation gamma_top_bottom(int p) {
    if (p < 1) throw std::invalid_argument("gamma_top_bottom: p must be >= 1");
    std::vector<int> im(2 * p);
    for (int i = 0; i < p; ++i) {
        im[i] = (i + p - 1) % p;          // top cycle: i^T -> (i-1)^T
        im[p + i] = p + (i + 1) % p;      // bottom cycle runs the other way
    }
    return Permutation(std::move(im));
}

void for_each_permutation(int m, const std::function<void(const Permutation&)>& f) {
    std::vector<int> im(m);
    std::iota(im.begin(), im.end(), 0);
    do {
        f(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
}

std::vector<Permutation> enumerate_geodesics(const Permutation& target) {
    std::vector<Permutation> out;
    for_each_permutation(target.size(), [&](const Permutation& a) {
        if (is_geodesic(a, target)) out.push_back(a);
    });
    return out;
}

ChoiceFunction ChoiceFunction::from_mask(int p, std::uint32_t bell_mask) {
    ChoiceFunction f;
    f.p = p;
    f.choice.resize(p);
    for (int i = 0; i < p; ++i)
        f.choice[i] = (bell_mask >> i) & 1u ? Choice::Bell : Choice::Identity;
    return f;
}

int ChoiceFunction::bell_count() const {
    int c = 0;
    for (Choice ch : choice)
        if (ch == Choice::Bell) ++c;
    return c;
}

Permutation build_f_hat(const ChoiceFunction& f) {
    const int p = f.p;
    std::vector<int> im(2 * p);
    auto fc = [&](int pos1) { return f.choice[((pos1 - 1) % p + p) % p]; };  // 1-based, mod p
    for (int i = 1; i <= p; ++i) {
        int t = i - 1;      // i^T
        int b = p + i - 1;  // i^B
        if (fc(i) == Choice::Identity)
            im[t] = (i - 2 + p) % p;  // (i-1)^T
        else
            im[t] = b;
        if (fc(i + 1) == Choice::Identity)
            im[b] = p + (i % p);  // (i+1)^B
        else
            im[b] = t;
    }
    return Permutation(std::move(im));
}

bool is_vertical(const Permutation& a, int p) {
    if (a.size() != 2 * p) throw std::invalid_argument("is_vertical: size mismatch");
    for (int i = 0; i < p; ++i)
        if (a(i) == p + i || a(p + i) == i) return true;
    return false;
}

}  // namespace rqc
