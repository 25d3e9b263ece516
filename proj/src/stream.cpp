#include "streambench/stream.hpp"

namespace streambench {

std::vector<Instance> materialize(InstanceSource& source) {
    std::vector<Instance> out;
    if (source.spec().length > 0) out.reserve(static_cast<std::size_t>(source.spec().length));
    while (auto x = source.next()) out.push_back(std::move(*x));
    return out;
}

}  // namespace streambench
