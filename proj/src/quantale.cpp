#include "collagekit/quantale.hpp"

#include <algorithm>

#include "collagekit/base.hpp"

namespace ck {

namespace {

void require(bool ok, const std::string& label, const std::string& what) {
    if (!ok) throw StructuralError("quantale " + label + ": " + what);
}

}  // namespace

Quantale::Quantale(std::string label, std::vector<std::string> names, std::vector<int> join_table,
                   std::vector<int> tensor_table, int unit_elem)
    : label_(std::move(label)), n_(static_cast<int>(names.size())), names_(std::move(names)),
      join_(std::move(join_table)), tensor_(std::move(tensor_table)), unit_(unit_elem) {
    const int n = n_;
    require(n > 0, label_, "no elements");
    require(join_.size() == static_cast<std::size_t>(n * n), label_, "join table has wrong size");
    require(tensor_.size() == static_cast<std::size_t>(n * n), label_, "tensor table has wrong size");
    require(unit_ >= 0 && unit_ < n, label_, "unit out of range");
    for (int v : join_) require(v >= 0 && v < n, label_, "join value out of range");
    for (int v : tensor_) require(v >= 0 && v < n, label_, "tensor value out of range");

    for (int a = 0; a < n; ++a) {
        require(join(a, a) == a, label_, "join not idempotent at " + names_[a]);
        for (int b = 0; b < n; ++b) {
            require(join(a, b) == join(b, a), label_, "join not commutative");
            for (int c = 0; c < n; ++c)
                require(join(join(a, b), c) == join(a, join(b, c)), label_, "join not associative");
        }
    }
    int bot = -1;
    for (int b = 0; b < n && bot < 0; ++b) {
        bool ok = true;
        for (int a = 0; a < n; ++a) ok = ok && join(b, a) == a;
        if (ok) bot = b;
    }
    require(bot >= 0, label_, "no bottom element");
    bottom_ = bot;
    top_ = 0;
    for (int a = 0; a < n; ++a) top_ = join(top_, a);

    for (int a = 0; a < n; ++a) {
        require(tensor(unit_, a) == a && tensor(a, unit_) == a, label_, "unit law fails at " + names_[a]);
        require(tensor(a, bottom_) == bottom_ && tensor(bottom_, a) == bottom_, label_,
                "tensor does not preserve the empty join");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                require(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)), label_, "tensor not associative");
                require(tensor(a, join(b, c)) == join(tensor(a, b), tensor(a, c)), label_,
                        "tensor does not distribute over joins on the left");
                require(tensor(join(b, c), a) == join(tensor(b, a), tensor(c, a)), label_,
                        "tensor does not distribute over joins on the right");
            }
    }
}

std::optional<int> Quantale::index(const std::string& nm) const {
    for (int i = 0; i < n_; ++i)
        if (names_[i] == nm) return i;
    return std::nullopt;
}

bool Quantale::is_boolean() const {
    return n_ == 2 && unit_ == top_ && bottom_ != top_;
}

Quantale Quantale::boolean() {
    return Quantale("boolean", {"F", "T"}, {0, 1, 1, 1}, {0, 0, 0, 1}, 1);
}

Quantale Quantale::minplus(int k) {
    if (k < 0) throw StructuralError("minplus cap must be non-negative");
    const int n = k + 2, inf = k + 1;
    std::vector<std::string> names;
    for (int i = 0; i <= k; ++i) names.push_back(std::to_string(i));
    names.push_back("inf");
    std::vector<int> join(n * n), tensor(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            join[a * n + b] = std::min(a, b);
            tensor[a * n + b] = (a == inf || b == inf || a + b > k) ? inf : a + b;
        }
    return Quantale("minplus(" + std::to_string(k) + ")", names, join, tensor, 0);
}

Quantale Quantale::chain_meet(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<int> join(n * n), tensor(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            join[a * n + b] = std::max(a, b);
            tensor[a * n + b] = std::min(a, b);
        }
    return Quantale("chain(" + std::to_string(n) + ")", names, join, tensor, n - 1);
}

Quantale Quantale::lukasiewicz(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<int> join(n * n), tensor(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            join[a * n + b] = std::max(a, b);
            tensor[a * n + b] = std::max(0, a + b - (n - 1));
        }
    return Quantale("lukasiewicz(" + std::to_string(n) + ")", names, join, tensor, n - 1);
}

Quantale Quantale::powerset_z2() {
    // bit 0: identity element e, bit 1: generator g.
    std::vector<std::string> names = {"{}", "{e}", "{g}", "{e,g}"};
    std::vector<int> join(16), tensor(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            join[a * 4 + b] = a | b;
            int r = 0;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    if ((a >> x & 1) && (b >> y & 1)) r |= 1 << (x ^ y);
            tensor[a * 4 + b] = r;
        }
    return Quantale("powerset(Z2)", names, join, tensor, 1);
}

Quantale Quantale::diamond() {
    std::vector<std::string> names = {"0", "a", "b", "1"};
    std::vector<int> join(16), tensor(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            join[a * 4 + b] = a | b;
            tensor[a * 4 + b] = a & b;
        }
    return Quantale("diamond", names, join, tensor, 3);
}

}  // namespace ck
