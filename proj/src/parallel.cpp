#include "rwrs/parallel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rwrs {

std::size_t resolve_threads(std::size_t override_count) {
    if (override_count != 0) return override_count;
    if (const char* env = std::getenv("RWRS_THREADS")) {
        const std::string text(env);
        std::size_t pos = 0;
        unsigned long parsed = 0;
        try {
            parsed = std::stoul(text, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("RWRS_THREADS must be a positive integer");
        }
        if (pos != text.size() || parsed == 0)
            throw std::runtime_error("RWRS_THREADS must be a positive integer");
        return static_cast<std::size_t>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<std::size_t>(hw);
}

} // namespace rwrs
