#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace saw {

// Canonical vertex identifier.
//
// Lattice keys name the vertex (cell, offset) of a periodic lattice. Word keys
// carry a reduced word over generator indices; the owning graph guarantees
// that the word is in normal form, so equality of keys is equality of
// vertices.
class VertexKey {
public:
    enum class Kind : std::uint8_t { lattice = 0, word = 1 };

    VertexKey() = default;

    static VertexKey lattice(int cell, std::vector<std::int64_t> offset);
    static VertexKey word(std::vector<std::int64_t> letters);

    Kind kind() const noexcept { return kind_; }
    bool is_lattice() const noexcept { return kind_ == Kind::lattice; }
    bool is_word() const noexcept { return kind_ == Kind::word; }

    int cell() const noexcept { return cell_; }
    const std::vector<std::int64_t>& offset() const noexcept { return data_; }
    const std::vector<std::int64_t>& letters() const noexcept { return data_; }
    std::size_t dimension() const noexcept { return data_.size(); }

    // Text form: "L<cell>:<x1>,<x2>,..." or "W:<l1>.<l2>...". Round-trips
    // exactly through parse().
    std::string to_string() const;
    static VertexKey parse(std::string_view text);

    std::size_t hash() const noexcept;

    friend bool operator==(const VertexKey&, const VertexKey&) = default;
    friend auto operator<=>(const VertexKey&, const VertexKey&) = default;

private:
    Kind kind_ = Kind::lattice;
    int cell_ = 0;
    std::vector<std::int64_t> data_;
};

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const noexcept { return k.hash(); }
};

// Overflow-checked integer helpers; wraparound is a hard error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

std::vector<std::int64_t> add_offsets(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b);
std::vector<std::int64_t> sub_offsets(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b);

}  // namespace saw

template <>
struct std::hash<saw::VertexKey> {
    std::size_t operator()(const saw::VertexKey& k) const noexcept { return k.hash(); }
};
