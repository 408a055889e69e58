#include "saw/vertex_key.hpp"

#include <charconv>

#include "saw/errors.hpp"

namespace saw {

VertexKey VertexKey::lattice(int cell, std::vector<std::int64_t> offset) {
    if (cell < 0) {
        throw InvalidVertexError("negative cell index " + std::to_string(cell));
    }
    VertexKey k;
    k.kind_ = Kind::lattice;
    k.cell_ = cell;
    k.data_ = std::move(offset);
    return k;
}

VertexKey VertexKey::word(std::vector<std::int64_t> letters) {
    VertexKey k;
    k.kind_ = Kind::word;
    k.cell_ = 0;
    k.data_ = std::move(letters);
    return k;
}

std::string VertexKey::to_string() const {
    std::string out;
    if (kind_ == Kind::lattice) {
        out = "L" + std::to_string(cell_) + ":";
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(data_[i]);
        }
    } else {
        out = "W:";
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i) out += '.';
            out += std::to_string(data_[i]);
        }
    }
    return out;
}

namespace {

std::vector<std::int64_t> parse_list(std::string_view s, char sep, std::string_view whole) {
    std::vector<std::int64_t> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        std::string_view tok = s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
            throw InvalidVertexError("malformed vertex key '" + std::string(whole) + "'");
        }
        out.push_back(v);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

VertexKey VertexKey::parse(std::string_view text) {
    if (text.size() >= 2 && text[0] == 'W' && text[1] == ':') {
        return word(parse_list(text.substr(2), '.', text));
    }
    if (text.size() >= 2 && text[0] == 'L') {
        auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw InvalidVertexError("malformed vertex key '" + std::string(text) + "'");
        }
        auto cell_part = text.substr(1, colon - 1);
        int cell = 0;
        auto [ptr, ec] = std::from_chars(cell_part.data(), cell_part.data() + cell_part.size(), cell);
        if (ec != std::errc{} || ptr != cell_part.data() + cell_part.size() || cell_part.empty()) {
            throw InvalidVertexError("malformed vertex key '" + std::string(text) + "'");
        }
        return lattice(cell, parse_list(text.substr(colon + 1), ',', text));
    }
    throw InvalidVertexError("malformed vertex key '" + std::string(text) + "'");
}

std::size_t VertexKey::hash() const noexcept {
    // FNV-1a over the tag, cell and coordinates.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(kind_));
    mix(static_cast<std::uint64_t>(cell_));
    for (auto x : data_) mix(static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in offset arithmetic");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in offset arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in offset arithmetic");
    return r;
}

std::vector<std::int64_t> add_offsets(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) throw InvalidVertexError("offset dimension mismatch");
    std::vector<std::int64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

std::vector<std::int64_t> sub_offsets(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) throw InvalidVertexError("offset dimension mismatch");
    std::vector<std::int64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
    return r;
}

}  // namespace saw
