#pragma once

#include "hmorph/families.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hmorph {

/// Selectors of the coordinate-function lemmas: "4.1", "5.1", "6.1", "8.1",
/// "10.1", "11.1", "12.1".
std::vector<std::string> lemma_selectors();

/// The group family a lemma is stated on; throws std::invalid_argument for an
/// unknown selector.
GroupFamily lemma_family(std::string_view selector);

GroupDescriptor default_group_for_lemma(std::string_view selector);

/// Groups of matrix size at most max_size the battery runs a lemma on.
std::vector<GroupDescriptor> lemma_battery_groups(std::string_view selector, int max_size = 6);

/// Replays every tau and kappa relation of the lemma for the coordinate
/// functions of the group at sampled points. Residuals are relative.
///
/// The kappa relation for so_pq is checked twice: as "kappa-x-x" in the
/// form with the signed sum over the two index blocks, and as
/// "kappa-x-x-corrected" with the unsigned sum over all t. Only the second
/// holds; the first is kept so the report shows the discrepancy.
VerificationReport verify_lemma(const GroupDescriptor& group, std::string_view selector,
                                const VerifyOptions& opt = {});

}  // namespace hmorph
