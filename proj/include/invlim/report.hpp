#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "invlim/conjecture.hpp"

namespace invlim {

using Json = nlohmann::ordered_json;

// Serialization of threads, verdicts and sweep reports.
//
// A thread is an object mapping each family member (rgs text) to its chosen
// block (element-set text), in family order. A report mirrors SweepReport;
// wall time is left out unless `include_timing`, so that reports of equal
// sweeps are byte-identical.

Json family_to_json(const FamilyDescriptor& family);
FamilyDescriptor family_from_json(const Json& j, std::size_t n);

Json thread_to_json(std::span<const SetPartition> members,
                    const Thread& thread);
Thread thread_from_json(std::span<const SetPartition> members, const Json& j);

Json verdict_to_json(const PointVerdict& verdict);
PointVerdict verdict_from_json(const Json& j);

Json report_to_json(const SweepReport& report, bool include_timing = false);

// Pretty-printed JSON plus trailing newline.
std::string serialize_report(const SweepReport& report,
                             bool include_timing = false);

}  // namespace invlim
