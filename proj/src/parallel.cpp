#include "fracheat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fracheat {

int worker_count()
{
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* cap = std::getenv("FRACHEAT_THREADS")) {
        try {
            int v = std::stoi(cap);
            if (v >= 1 && v < hw) hw = v;
        } catch (...) {
            // ignore malformed caps
        }
    }
    return hw;
}

} // namespace fracheat
