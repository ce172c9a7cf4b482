#include "invlim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <string_view>

#include "CLI11.hpp"
#include "invlim/conjecture.hpp"
#include "invlim/error.hpp"
#include "invlim/report.hpp"
#include "invlim/text.hpp"

namespace invlim::cli {

namespace {

constexpr std::string_view kFilePrefix = "file:";

// Raw option storage; optionals are filled only when the flag was given.
struct Bindings {
  RunConfig config;
  std::string semantics = "standard";
};

std::unique_ptr<CLI::App> make_app(Bindings& b) {
  auto app = std::make_unique<CLI::App>(
      "Inverse limits of recurrence sets over finite partitions, and "
      "exhaustive checks of their link with periodic points",
      "invlim");
  app->require_subcommand(1);
  RunConfig& c = b.config;
  const auto semantics_check = CLI::IsMember({"standard", "point-supported"});
  auto family_check = CLI::Validator(
      [](std::string& v) -> std::string {
        if (v == "full" || v.rfind(kFilePrefix, 0) == 0) return {};
        return "family must be 'full' or 'file:PATH'";
      },
      "full|file:PATH");

  auto* partitions =
      app->add_subcommand("partitions", "List every partition of {0..n-1}");
  partitions->add_option("--n", c.n, "Ground-set size")->required();
  partitions->add_flag("--force", c.force, "Lift the lattice size ceiling");

  auto* delta = app->add_subcommand(
      "delta", "Blocks of a partition visited infinitely often from a point");
  delta->add_option("--map", c.map, "Image table, e.g. [1,2,1]")->required();
  delta->add_option("--point", c.point, "Base point x")->required();
  delta->add_option("--partition", c.partition,
                    "Partition in block or rgs notation")
      ->required();
  delta->add_flag("--explain", c.explain, "Print the orbit decomposition");

  auto* limit = app->add_subcommand(
      "limit", "Enumerate the threads of the inverse limit at a point");
  limit->add_option("--map", c.map, "Image table, e.g. [1,2,1]")->required();
  limit->add_option("--point", c.point, "Base point x")->required();
  limit->add_option("--semantics", b.semantics)->check(semantics_check);
  limit->add_option("--family", c.family, "full or file:PATH")
      ->check(family_check);
  limit->add_flag("--force", c.force, "Lift the lattice size ceiling");
  limit->add_flag("--explain", c.explain,
                  "Print recurrence sets, inclusion tables and thread audits");

  auto* conjecture = app->add_subcommand(
      "conjecture", "Sweep endofunctions and compare limits with periodicity");
  conjecture->add_option("--n", c.n, "Ground-set size")->required();
  conjecture->add_option("--semantics", b.semantics)->check(semantics_check);
  conjecture->add_option("--family", c.family, "full or file:PATH")
      ->check(family_check);
  auto* sample = conjecture->add_option(
      "--sample", c.sample, "Check N random endofunctions instead of all");
  conjecture->add_option("--seed", c.seed, "Seed for --sample")
      ->needs(sample);
  conjecture->add_option("--out", c.out, "Write the JSON report here");
  conjecture->add_option("--workers", c.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  conjecture->add_flag("--force", c.force, "Lift the sweep size ceiling");
  conjecture->add_flag("--timing", c.timing,
                       "Report wall time (makes output run-dependent)");
  return app;
}

void parse_into(CLI::App& app, Bindings& b,
                const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
  b.config.subcommand = app.get_subcommands().front()->get_name();
  b.config.semantics = parse_semantics(b.semantics);
}

PartitionFamily load_family(const RunConfig& c, std::size_t n) {
  if (c.family == "full") return PartitionFamily::full_lattice(n, c.force);
  const std::string path = c.family.substr(kFilePrefix.size());
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open family file " + path);
  std::vector<SetPartition> members = parse_family(in, n);
  if (members.empty()) throw UsageError("family file " + path + " is empty");
  return PartitionFamily::of(std::move(members));
}

std::string family_label(const PartitionFamily& family) {
  return family.is_full_lattice() ? "full-lattice" : "given";
}

std::string join_blocks(const SetPartition& p,
                        const std::vector<std::size_t>& blocks) {
  std::string s;
  for (std::size_t b : blocks) {
    if (!s.empty()) s += '|';
    s += format_block(p.block(b));
  }
  return s;
}

std::string join_points(const std::vector<std::size_t>& points) {
  return format_block(points);
}

int cmd_partitions(const RunConfig& c, std::ostream& out) {
  const std::size_t n = c.n.value();
  if (n > kLatticeCeiling && !c.force) {
    throw ResourceGuardError("n=" + std::to_string(n) +
                             " exceeds the lattice ceiling n=" +
                             std::to_string(kLatticeCeiling) +
                             " (use --force)");
  }
  PartitionStream stream(n);
  std::uint64_t count = 0;
  while (auto p = stream.next()) {
    out << format_rgs(*p) << ' ' << format_blocks(*p) << '\n';
    ++count;
  }
  out << "count " << count << '\n';
  return kOk;
}

int cmd_delta(const RunConfig& c, std::ostream& out) {
  const Endofunction map = parse_endofunction(c.map.value());
  const SetPartition p = parse_partition(c.partition.value(), map.size());
  const OrbitShape orbit = orbit_shape(map, c.point.value());
  const DeltaSet delta = delta_of(orbit, p);
  if (c.explain) {
    out << "# tail " << join_points(orbit.tail) << " cycle "
        << join_points(orbit.cycle) << '\n';
  }
  for (std::size_t b : delta.blocks) out << format_block(p.block(b)) << '\n';
  return kOk;
}

void explain_system(const InverseSystemAtPoint& system, std::ostream& out) {
  const auto members = system.family.members();
  out << "# orbit tail " << join_points(system.orbit.tail) << " cycle "
      << join_points(system.orbit.cycle) << '\n';
  for (std::size_t i = 0; i < members.size(); ++i) {
    out << "# node " << format_rgs(members[i]) << " Delta(x) = "
        << join_blocks(members[i], system.nodes[i].blocks) << '\n';
  }
  for (const RestrictedEdge& e : system.edges) {
    std::vector<std::size_t> images;
    for (std::size_t a : system.nodes[e.fine].blocks) {
      images.push_back(e.image[a]);
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    const bool included = std::all_of(
        images.begin(), images.end(),
        [&](std::size_t b) { return system.nodes[e.coarse].contains(b); });
    out << "# psi " << format_rgs(members[e.fine]) << " -> "
        << format_rgs(members[e.coarse]) << ": image "
        << join_blocks(members[e.coarse], images) << " within "
        << join_blocks(members[e.coarse], system.nodes[e.coarse].blocks)
        << (included ? " ok" : " VIOLATED") << '\n';
  }
}

int cmd_limit(const RunConfig& c, std::ostream& out) {
  const Endofunction map = parse_endofunction(c.map.value());
  const PartitionFamily family = load_family(c, map.size());
  const InverseSystemAtPoint system =
      build_system(map, c.point.value(), family);
  const ThreadList list = enumerate_threads(system, c.semantics);

  out << "map " << format_table(map) << " point " << system.x << " semantics "
      << to_string(c.semantics) << " family " << family_label(family)
      << " members " << family.size() << '\n';
  if (c.explain) explain_system(system, out);
  const bool periodic = system.orbit.tail_length() == 0;
  out << "periodic " << (periodic ? "true" : "false") << '\n';
  out << "threads " << list.threads.size()
      << (list.truncated ? " (truncated)" : "") << '\n';
  for (std::size_t t = 0; t < list.threads.size(); ++t) {
    out << "thread " << t << ' '
        << thread_to_json(family.members(), list.threads[t]).dump() << '\n';
    if (c.explain) {
      const ThreadAudit audit =
          audit_thread(system, list.threads[t], c.semantics);
      out << "# audit thread " << t << ": " << audit.membership_checks
          << " membership, " << audit.compatibility_checks
          << " compatibility, " << audit.support_checks << " support checks, "
          << (audit.ok() ? "ok" : audit.violations.front()) << '\n';
    }
  }
  const bool nonempty = !list.threads.empty();
  out << "conjecture " << (nonempty == periodic ? "holds" : "fails") << '\n';
  return kOk;
}

int cmd_conjecture(const RunConfig& c, std::ostream& out) {
  const std::size_t n = c.n.value();
  SweepOptions options;
  options.workers = c.workers;
  options.force = c.force;
  SweepReport report;
  if (c.sample) {
    report = c.family == "full"
                 ? sampled_sweep(n, c.semantics, *c.sample, c.seed.value_or(0),
                                 options)
                 : sampled_sweep(n, c.semantics, load_family(c, n), *c.sample,
                                 c.seed.value_or(0), options);
  } else {
    report = c.family == "full"
                 ? exhaustive_sweep(n, c.semantics, options)
                 : exhaustive_sweep(n, c.semantics, load_family(c, n), options);
  }
  if (c.out) {
    std::ofstream file(*c.out, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot write " + *c.out);
    file << serialize_report(report, c.timing);
    if (!file) throw std::ios_base::failure("write failed for " + *c.out);
  }
  out << "n=" << report.n << " semantics=" << to_string(report.semantics)
      << " points=" << report.total_points << " holds=" << report.holds_count
      << ' ' << report.counterexamples.size() << " counterexamples"
      << " (periodic but empty " << report.reverse_failures
      << ", nonempty but not periodic " << report.forward_failures << ")";
  if (c.timing) out << " wall_time=" << report.wall_time_seconds << "s";
  out << '\n';
  return kOk;
}

}  // namespace

std::vector<std::string> RunConfig::to_args() const {
  std::vector<std::string> a{subcommand};
  auto opt = [&a](const char* flag, const auto& value) {
    if (value) {
      a.push_back(flag);
      if constexpr (std::is_same_v<std::decay_t<decltype(*value)>,
                                   std::string>) {
        a.push_back(*value);
      } else {
        a.push_back(std::to_string(*value));
      }
    }
  };
  opt("--n", n);
  opt("--map", map);
  opt("--point", point);
  opt("--partition", partition);
  if (subcommand == "limit" || subcommand == "conjecture") {
    a.insert(a.end(), {"--semantics", std::string(to_string(semantics))});
    a.insert(a.end(), {"--family", family});
  }
  opt("--sample", sample);
  opt("--seed", seed);
  opt("--out", out);
  if (subcommand == "conjecture") {
    a.insert(a.end(), {"--workers", std::to_string(workers)});
  }
  if (force) a.push_back("--force");
  if (explain) a.push_back("--explain");
  if (timing) a.push_back("--timing");
  return a;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  Bindings b;
  auto app = make_app(b);
  try {
    parse_into(*app, b, args);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return b.config;
}

int execute(const RunConfig& c, std::ostream& out) {
  if (c.subcommand == "partitions") return cmd_partitions(c, out);
  if (c.subcommand == "delta") return cmd_delta(c, out);
  if (c.subcommand == "limit") return cmd_limit(c, out);
  if (c.subcommand == "conjecture") return cmd_conjecture(c, out);
  throw UsageError("unknown subcommand '" + c.subcommand + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Bindings b;
  auto app = make_app(b);
  try {
    parse_into(*app, b, args);
  } catch (const CLI::CallForHelp&) {
    out << app->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app->help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return execute(b.config, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const EmptyGroundSetError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kDimension;
  } catch (const PointError& e) {
    err << "point error: " << e.what() << '\n';
    return kPoint;
  } catch (const OrderError& e) {
    err << "order error: " << e.what() << '\n';
    return kOrder;
  } catch (const ResourceGuardError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace invlim::cli
