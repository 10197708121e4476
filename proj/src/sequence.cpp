#include "degdet/sequence.hpp"

namespace degdet {

std::string delta_str(const Delta& d) { return d ? std::to_string(*d) : "-inf"; }

std::string seq_str(const DeltaSeq& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + delta_str(s[i]);
    return out + "]";
}

}  // namespace degdet
