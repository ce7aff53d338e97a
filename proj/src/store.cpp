#include "walkstore/store.hpp"

#include "walkstore/errors.hpp"

namespace walkstore {

Walk WalkStore::decode_all() const {
    Walk w(length() + 1);
    for (std::size_t i = 0; i <= length(); ++i) {
        w[i] = vertex_at(i);
    }
    return w;
}

void WalkStore::check_index(std::size_t i) const {
    if (i > length()) {
        throw RangeError("index " + std::to_string(i) + " out of range for walk of length " +
                         std::to_string(length()));
    }
}

Strategy resolve_strategy(Strategy s, const BigInt& max_radix) {
    if (s.kind == Strategy::Kind::blocked && s.param == 0) {
        s.param = auto_group_length(max_radix);
    }
    return s;
}

} // namespace walkstore
