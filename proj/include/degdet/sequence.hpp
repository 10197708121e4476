#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace degdet {

// nullopt stands for -inf.
using Delta = std::optional<std::int64_t>;
using DeltaSeq = std::vector<Delta>;

std::string delta_str(const Delta& d);
std::string seq_str(const DeltaSeq& s);

}  // namespace degdet
