#include "aperyforge/real.hpp"

#include <cstdio>
#include <vector>

namespace aperyforge {

std::string Real::to_string(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    std::string fmt = "%." + std::to_string(digits) + "Re";
    mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    return std::string(buf.data());
}

} // namespace aperyforge
