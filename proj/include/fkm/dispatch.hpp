#ifndef FKM_DISPATCH_HPP
#define FKM_DISPATCH_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace fkm {

template <std::size_t D>
using DimTag = std::integral_constant<std::size_t, D>;

/// Calls f(DimTag<D>{}) for the runtime algebra dimension d in {1, 2, 4, 8}.
template <typename F>
decltype(auto) dispatch_dim(int d, F&& f) {
    switch (d) {
        case 1: return f(DimTag<1>{});
        case 2: return f(DimTag<2>{});
        case 4: return f(DimTag<4>{});
        case 8: return f(DimTag<8>{});
        default:
            throw std::invalid_argument("unsupported algebra dimension " + std::to_string(d));
    }
}

}  // namespace fkm

#endif
