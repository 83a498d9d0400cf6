#pragma once

#include <optional>
#include <string>

namespace qecco::cli {

/// Published success counts (per 100 runs) for the loss-variant and
/// repetition studies. These are display labels for side-by-side comparison,
/// never test oracles. Returns nullopt when the combination does not exist
/// (no transversal realization) or was excluded.
std::optional<int> reference_count_loss(const std::string& code, const std::string& loss,
                                        const std::string& gate);
std::optional<int> reference_count_repetition(const std::string& code, std::size_t repetitions,
                                              const std::string& gate);

}  // namespace qecco::cli
