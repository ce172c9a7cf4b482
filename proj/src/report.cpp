#include "invlim/report.hpp"

#include <string>
#include <vector>

#include "invlim/error.hpp"
#include "invlim/text.hpp"

namespace invlim {

namespace {

std::string_view to_string(SweepMode mode) {
  return mode == SweepMode::exhaustive ? "exhaustive" : "sampled";
}

std::vector<SetPartition> members_of(const FamilyDescriptor& family,
                                     std::size_t n) {
  if (family.full_lattice) return enumerate_partitions(n);
  return family.members;
}

}  // namespace

Json family_to_json(const FamilyDescriptor& family) {
  Json j;
  if (family.full_lattice) {
    j["kind"] = "full-lattice";
    return j;
  }
  j["kind"] = "members";
  Json members = Json::array();
  for (const SetPartition& p : family.members) {
    members.push_back(format_blocks(p));
  }
  j["members"] = std::move(members);
  return j;
}

FamilyDescriptor family_from_json(const Json& j, std::size_t n) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "full-lattice") return {true, {}};
  if (kind != "members") {
    throw ValidationError("unknown family kind '" + kind + "'");
  }
  FamilyDescriptor out{false, {}};
  for (const Json& m : j.at("members")) {
    out.members.push_back(parse_partition(m.get<std::string>(), n));
  }
  return out;
}

Json thread_to_json(std::span<const SetPartition> members,
                    const Thread& thread) {
  if (thread.choice.size() != members.size()) {
    throw DimensionError("thread length does not match the family");
  }
  Json j = Json::object();
  for (std::size_t i = 0; i < members.size(); ++i) {
    j[format_rgs(members[i])] = format_block(members[i].block(thread.choice[i]));
  }
  return j;
}

Thread thread_from_json(std::span<const SetPartition> members, const Json& j) {
  if (j.size() != members.size()) {
    throw DimensionError("thread record has " + std::to_string(j.size()) +
                         " entries for a family of " +
                         std::to_string(members.size()));
  }
  Thread thread;
  thread.choice.reserve(members.size());
  for (const SetPartition& p : members) {
    const Block block = parse_block(j.at(format_rgs(p)).get<std::string>());
    if (block.empty() || block.front() >= p.size()) {
      throw ValidationError("thread block outside partition " + format_rgs(p));
    }
    const std::size_t index = p.block_of(block.front());
    if (p.block(index) != block) {
      throw ValidationError("thread entry for " + format_rgs(p) +
                            " is not one of its blocks");
    }
    thread.choice.push_back(index);
  }
  return thread;
}

namespace {

Json verdict_json(const PointVerdict& verdict,
                  std::span<const SetPartition> members) {
  Json j;
  j["map"] = format_table(verdict.map);
  j["point"] = verdict.x;
  j["semantics"] = std::string(to_string(verdict.semantics));
  j["family"] = family_to_json(verdict.family);
  j["limit_nonempty"] = verdict.limit_nonempty;
  j["thread_count"] = verdict.thread_count;
  j["thread_count_truncated"] = verdict.thread_count_truncated;
  j["periodic"] = verdict.periodic;
  j["conjecture_holds"] = verdict.conjecture_holds;
  if (verdict.witness) {
    j["witness"] = thread_to_json(members, *verdict.witness);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace

Json verdict_to_json(const PointVerdict& verdict) {
  return verdict_json(verdict, members_of(verdict.family, verdict.map.size()));
}

PointVerdict verdict_from_json(const Json& j) {
  PointVerdict v;
  v.map = parse_endofunction(j.at("map").get<std::string>());
  const std::size_t n = v.map.size();
  v.x = j.at("point").get<std::size_t>();
  v.semantics = parse_semantics(j.at("semantics").get<std::string>());
  v.family = family_from_json(j.at("family"), n);
  v.limit_nonempty = j.at("limit_nonempty").get<bool>();
  v.thread_count = j.at("thread_count").get<std::size_t>();
  v.thread_count_truncated = j.at("thread_count_truncated").get<bool>();
  v.periodic = j.at("periodic").get<bool>();
  v.conjecture_holds = j.at("conjecture_holds").get<bool>();
  if (const Json& w = j.at("witness"); !w.is_null()) {
    v.witness = thread_from_json(members_of(v.family, n), w);
  }
  return v;
}

Json report_to_json(const SweepReport& report, bool include_timing) {
  Json j;
  j["n"] = report.n;
  j["semantics"] = std::string(to_string(report.semantics));
  j["mode"] = std::string(to_string(report.mode));
  j["family"] = family_to_json(report.family);
  if (report.mode == SweepMode::sampled) {
    j["sample_size"] = report.sample_size;
    j["seed"] = report.seed;
  }
  j["complete"] = report.complete;
  j["total_points"] = report.total_points;
  j["holds_count"] = report.holds_count;
  j["counterexample_count"] = report.counterexamples.size();
  j["direction_breakdown"] = {
      {"periodic_but_empty", report.reverse_failures},
      {"nonempty_but_not_periodic", report.forward_failures}};
  if (include_timing) j["wall_time_seconds"] = report.wall_time_seconds;

  // The family is the same for every record; build its member list once.
  const std::vector<SetPartition> members = members_of(report.family, report.n);
  Json records = Json::array();
  for (const PointVerdict& v : report.counterexamples) {
    records.push_back(verdict_json(v, members));
  }
  j["counterexamples"] = std::move(records);
  return j;
}

std::string serialize_report(const SweepReport& report, bool include_timing) {
  return report_to_json(report, include_timing).dump(2) + "\n";
}

}  // namespace invlim
