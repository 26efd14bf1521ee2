#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ck {

// Finite quantale given by tables over elements 0..n-1.  The order is the one
// induced by joins: a <= b iff join(a, b) == b.  Construction checks every law
// exhaustively and throws StructuralError on failure.
class Quantale {
public:
    Quantale(std::string label, std::vector<std::string> names, std::vector<int> join,
             std::vector<int> tensor, int unit);

    int size() const { return n_; }
    int join(int a, int b) const { return join_[a * n_ + b]; }
    int tensor(int a, int b) const { return tensor_[a * n_ + b]; }
    int unit() const { return unit_; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }
    bool leq(int a, int b) const { return join(a, b) == b; }

    const std::string& label() const { return label_; }
    const std::string& name(int a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& join_table() const { return join_; }
    const std::vector<int>& tensor_table() const { return tensor_; }
    std::optional<int> index(const std::string& nm) const;
    bool is_boolean() const;

    bool operator==(const Quantale& o) const {
        return names_ == o.names_ && join_ == o.join_ && tensor_ == o.tensor_ && unit_ == o.unit_;
    }

    static Quantale boolean();
    // Lawvere distances {0..k, inf}: join is min, tensor is truncated addition
    // (sums above k become inf), unit 0.
    static Quantale minplus(int k);
    // Chain 0 < 1 < ... < n-1 with tensor = meet.
    static Quantale chain_meet(int n);
    // Chain 0..n-1 with tensor max(0, a + b - (n-1)).
    static Quantale lukasiewicz(int n);
    // Subsets of the two-element group, tensor = pointwise product.
    static Quantale powerset_z2();
    // Four-element Boolean algebra 2x2 with tensor = meet.
    static Quantale diamond();

private:
    std::string label_;
    int n_;
    std::vector<std::string> names_;
    std::vector<int> join_, tensor_;
    int unit_, bottom_ = 0, top_ = 0;
};

}  // namespace ck
