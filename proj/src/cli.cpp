#include "vfk/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vfk/decoder.hpp"
#include "vfk/generator.hpp"
#include "vfk/lattice_io.hpp"
#include "vfk/oracle.hpp"

namespace vfk::cli {

namespace {

using nlohmann::json;

struct LatticeSource {
  std::string file;
  std::string named;
  int dim = 0;
};

void addLatticeSource(CLI::App* cmd, LatticeSource& src) {
  cmd->add_option("lattice", src.file, "Lattice file (JSON with \"basis\" or \"selling\")");
  cmd->add_option("--named", src.named, "Built-in lattice instead of a file: Zn, An or fig2");
  cmd->add_option("--dim", src.dim, "Dimension for --named");
}

Lattice loadLattice(const LatticeSource& src, Tolerance tol) {
  if (!src.named.empty()) {
    const int n = src.dim > 0 ? src.dim : (src.named == "fig2" ? 2 : 0);
    return Lattice(named(src.named, n), src.named);
  }
  if (src.file.empty()) {
    throw LatticeError(ErrorKind::ParseError, "no lattice given (pass a file or --named)");
  }
  return readLatticeFile(src.file, tol);
}

std::string readText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json vectorJson(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json coefficientsJson(const CoefficientVector& u) {
  json a = json::array();
  for (int i = 0; i < u.size(); ++i) a.push_back(u[i]);
  return a;
}

// Agreement for values in squared-length units.
bool close(double a, double b, double scale, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale});
}

Eigen::VectorXd randomVector(Rng& rng, int size, double lo, double hi) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

IndexSet randomSubset(Rng& rng, int size) {
  IndexSet s;
  for (int i = 0; i < size; ++i) {
    if (rng.uniform() < 0.5) s.push_back(i);
  }
  return s;
}

// ---------------------------------------------------------------- decode

struct DecodeArgs {
  LatticeSource lattice;
  std::string targetsFile;
  std::vector<std::string> inlineTargets;
  bool gram = false;
  bool trace = false;
  double tolerance = 1e-9;
};

int cmdDecode(const DecodeArgs& args, std::ostream& out, std::ostream& err) {
  const Tolerance tol{args.tolerance};
  std::optional<Lattice> lattice;
  std::vector<Eigen::VectorXd> targets;
  try {
    lattice.emplace(loadLattice(args.lattice, tol));
    if (!args.targetsFile.empty()) targets = parseTargets(readText(args.targetsFile));
    for (const auto& t : args.inlineTargets) {
      for (auto& v : parseTargets(t)) targets.push_back(std::move(v));
    }
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  if (targets.empty()) {
    err << "error: no targets given (use --target or --targets)\n";
    return kInvalidInput;
  }

  const ObtuseSuperbasis* sb = lattice->basis();
  const bool cartesian = !args.gram;
  if (cartesian && sb == nullptr) {
    err << "error: lattice has no explicit vectors; pass targets as extended coordinates with --gram\n";
    return kInvalidInput;
  }
  const int expected = cartesian ? sb->ambientDimension() : lattice->selling().size();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].size() != expected) {
      err << "error: DimensionMismatch: target " << i + 1 << " has " << targets[i].size()
          << " entries, expected " << expected << "\n";
      return kDimensionMismatch;
    }
  }

  DecoderOptions options;
  options.terminationRelative = args.tolerance;
  Decoder decoder(lattice->selling(), options);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    DecodeResult res;
    try {
      if (cartesian) {
        const ExtendedCoordinates z = solveCoordinates(*sb, targets[i]);
        res = decoder.decode(z);
        res.point = toCartesian(*sb, res.coefficients);
        res.outOfSpan = (targets[i] - sb->vectors() * z.z).squaredNorm();
      } else {
        res = decoder.decode(ExtendedCoordinates{targets[i]});
        if (sb) res.point = toCartesian(*sb, res.coefficients);
      }
    } catch (const LatticeError& e) {
      err << "error: target " << i + 1 << ": " << e.what() << "\n";
      return e.kind() == ErrorKind::DimensionMismatch ? kDimensionMismatch : kInvalidInput;
    }
    json record;
    record["index"] = i;
    record["coefficients"] = coefficientsJson(res.coefficients);
    if (res.point) record["point"] = vectorJson(*res.point);
    record["squared_distance"] = res.squaredDistance;
    if (res.outOfSpan) record["out_of_span"] = *res.outOfSpan;
    record["iterations"] = res.iterations;
    if (args.trace) {
      json trace = json::array();
      for (const auto& entry : res.trace) trace.push_back({entry.iteration, entry.squaredDistance});
      record["trace"] = std::move(trace);
    }
    out << record.dump() << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------- generate

struct GenerateArgs {
  int n = 0;
  double density = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string name;
};

int cmdGenerate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::string name = args.name;
    if (name.empty()) {
      std::ostringstream label;
      label.imbue(std::locale::classic());
      label << "random-n" << args.n << "-density" << args.density << "-seed" << args.seed;
      name = label.str();
    }
    const Lattice lattice(randomFirstKind(args.n, args.density, args.seed), name);
    if (args.out.empty() || args.out == "-") {
      out << formatLattice(lattice);
    } else {
      writeLatticeFile(args.out, lattice);
    }
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  LatticeSource lattice;
  int randomN = 0;
  int trials = 1;
  int targets = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
};

struct Tally {
  std::string name;
  long pass = 0;
  long fail = 0;
  long skipped = 0;
  std::string firstFailure;

  explicit Tally(std::string label) : name(std::move(label)) {}

  void record(bool ok, const std::string& detail) {
    if (ok) {
      ++pass;
    } else {
      if (fail == 0) firstFailure = detail;
      ++fail;
    }
  }
};

struct VerifySuite {
  Tally stepOracle{"step-vs-bruteBinaryMin"};
  Tally closestOracle{"closestPoint-vs-bruteClosest"};
  Tally identities{"phi-identities"};
  Tally iterationBound{"iteration-bound"};
  Tally descent{"descent"};

  void run(const SellingMatrix& q, int targets, std::uint64_t seed, double tolerance) {
    const int size = q.size();
    const int n = q.dimension();
    const double scale = q.scale();
    DecoderOptions options;
    options.terminationRelative = tolerance;
    Decoder decoder(q, options);
    Rng rng(seed);
    for (int k = 0; k < targets; ++k) {
      std::ostringstream where;
      where << "seed " << seed << " target " << k;

      if (n <= 16) {
        const Eigen::VectorXd p = randomVector(rng, size, -2.0, 2.0);
        const StepResult st = decoder.step(p);
        const BinaryMinimum best = bruteBinaryMin(BinaryQuadraticForm(-2.0 * q.matrix() * p, q));
        stepOracle.record(close(st.improvement, -best.value, scale), where.str());
      } else {
        ++stepOracle.skipped;
      }

      const Eigen::VectorXd z = randomVector(rng, size, -8.0, 8.0);
      const DecodeResult res = decoder.decode(ExtendedCoordinates{z});
      if (n <= kMaxBruteClosestDimension) {
        const ClosestPoint best = bruteClosest(q, ExtendedCoordinates{z});
        closestOracle.record(close(res.squaredDistance, best.squaredDistance, scale), where.str());
      } else {
        ++closestOracle.skipped;
      }
      iterationBound.record(res.iterations <= n, where.str());
      bool decreasing = true;
      for (std::size_t i = 1; i < res.trace.size(); ++i) {
        decreasing = decreasing && res.trace[i].squaredDistance < res.trace[i - 1].squaredDistance;
      }
      descent.record(decreasing, where.str());

      const Eigen::VectorXd p = randomVector(rng, size, -3.0, 3.0);
      const IndexSet s = randomSubset(rng, size);
      const IndexSet t = randomSubset(rng, size);
      const Eigen::VectorXd oneS = indicatorVector(size, s);
      const Eigen::VectorXd oneT = indicatorVector(size, t);
      const double base = quadNorm(q, p);
      double cross = 0.0;
      for (int i : s) {
        for (int j : t) cross += q(i, j);
      }
      const bool ok = close(base - quadNorm(q, p + oneS), phi(q, s, p), scale) &&
                      close(base - quadNorm(q, p - oneS), phi(q, complement(size, s), p), scale) &&
                      close(base - quadNorm(q, p + oneS - oneT),
                            phi(q, s, p) + phi(q, complement(size, t), p) + 2.0 * cross, scale);
      identities.record(ok, where.str());
    }
  }

  bool passed() const {
    for (const Tally* t : {&stepOracle, &closestOracle, &identities, &iterationBound, &descent}) {
      if (t->fail > 0) return false;
    }
    return true;
  }

  void print(std::ostream& out) const {
    for (const Tally* t : {&stepOracle, &closestOracle, &identities, &iterationBound, &descent}) {
      out << std::left << std::setw(30) << t->name << " pass " << std::setw(6) << t->pass << " fail "
          << std::setw(6) << t->fail;
      if (t->skipped > 0) out << " skipped " << t->skipped;
      if (t->fail > 0) out << " (first: " << t->firstFailure << ")";
      out << "\n";
    }
  }
};

int cmdVerify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const Tolerance tol{args.tolerance};
  VerifySuite suite;
  try {
    if (args.randomN != 0) {
      if (args.randomN < 1 || args.trials < 1) {
        err << "error: --random needs n >= 1 and --trials >= 1\n";
        return kInvalidInput;
      }
      const int targets = args.targets > 0 ? args.targets : 10;
      for (int trial = 0; trial < args.trials; ++trial) {
        const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(trial);
        const ObtuseSuperbasis sb = randomFirstKind(args.randomN, 1.0, seed);
        suite.run(sb.selling(), targets, seed, args.tolerance);
      }
    } else {
      const Lattice lattice = loadLattice(args.lattice, tol);
      suite.run(lattice.selling(), args.targets > 0 ? args.targets : 100, args.seed, args.tolerance);
    }
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InternalError ? kVerificationFailed : kInvalidInput;
  }
  suite.print(out);
  const bool ok = suite.passed();
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerificationFailed;
}

// ----------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<int> nList{16, 32, 64, 128, 256};
  int trials = 5;
  std::uint64_t seed = 1;
  double density = 1.0;
  std::string out;
};

int cmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trials < 1 || args.nList.empty()) {
    err << "error: bench needs --trials >= 1 and a non-empty --n list\n";
    return kInvalidInput;
  }
  for (int n : args.nList) {
    if (n < 1) {
      err << "error: dimensions must be positive\n";
      return kInvalidInput;
    }
  }
  std::ostringstream table;
  table.imbue(std::locale::classic());
  table << "n,trials,median_seconds,mean_iterations,max_iterations\n";
  std::vector<double> ns;
  std::vector<double> medians;
  bool boundHeld = true;
  try {
    for (int n : args.nList) {
      std::vector<double> seconds;
      long totalIterations = 0;
      int maxIterations = 0;
      for (int trial = 0; trial < args.trials; ++trial) {
        const std::uint64_t seed = args.seed * 1000003ULL + static_cast<std::uint64_t>(n) * 7919ULL +
                                   static_cast<std::uint64_t>(trial);
        const SellingMatrix q = SellingMatrix::fromGram(randomSellingGram(n, args.density, seed));
        Rng rng(seed ^ 0x5bd1e995ULL);
        const ExtendedCoordinates z{randomVector(rng, n + 1, -8.0, 8.0)};
        Decoder decoder(q);
        const auto start = std::chrono::steady_clock::now();
        const DecodeResult res = decoder.decode(z);
        const auto stop = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(stop - start).count());
        totalIterations += res.iterations;
        maxIterations = std::max(maxIterations, res.iterations);
      }
      std::sort(seconds.begin(), seconds.end());
      const std::size_t mid = seconds.size() / 2;
      const double median =
          seconds.size() % 2 ? seconds[mid] : 0.5 * (seconds[mid - 1] + seconds[mid]);
      boundHeld = boundHeld && maxIterations <= n;
      ns.push_back(n);
      medians.push_back(median);
      table << n << "," << args.trials << "," << std::setprecision(17) << median << ","
            << std::setprecision(6) << static_cast<double>(totalIterations) / args.trials << ","
            << maxIterations << "\n";
    }
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  if (ns.size() >= 2) table << "# loglog_slope," << std::setprecision(6) << logLogSlope(ns, medians) << "\n";

  if (args.out.empty() || args.out == "-") {
    out << table.str();
  } else {
    std::ofstream file(args.out);
    if (!file) {
      err << "error: cannot write " << args.out << "\n";
      return kInvalidInput;
    }
    file << table.str();
    out << table.str();
  }
  if (!boundHeld) {
    err << "error: iteration count exceeded n\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

std::vector<Eigen::VectorXd> parseTargets(const std::string& text) {
  std::vector<Eigen::VectorXd> rows;
  std::istringstream lines(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(lines, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::vector<double> values;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
      if (p == end) break;
      if (*p == '+') ++p;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && !std::isspace(static_cast<unsigned char>(*next)))) {
        throw LatticeError(ErrorKind::ParseError, "bad number on target line " + std::to_string(lineNo));
      }
      values.push_back(v);
      p = next;
    }
    if (values.empty()) continue;
    rows.push_back(Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return rows;
}

double logLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t count = std::min(x.size(), y.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closest points in lattices of Voronoi's first kind", "vfk"};
  app.require_subcommand(1);

  DecodeArgs decode;
  auto* decodeCmd = app.add_subcommand("decode", "Closest lattice point for each target");
  addLatticeSource(decodeCmd, decode.lattice);
  decodeCmd->add_option("--targets", decode.targetsFile, "File with one target per line");
  decodeCmd->add_option("-t,--target", decode.inlineTargets, "Inline target, e.g. \"4 3.5\"");
  decodeCmd->add_flag("--gram", decode.gram, "Targets are extended coordinates z (length n+1)");
  decodeCmd->add_flag("--trace", decode.trace, "Include per-iteration squared distances");
  decodeCmd->add_option("--tolerance", decode.tolerance, "Relative validation/termination tolerance");

  GenerateArgs generate;
  auto* generateCmd = app.add_subcommand("generate", "Random lattice of Voronoi's first kind");
  generateCmd->add_option("-n,--n", generate.n, "Lattice dimension")->required();
  generateCmd->add_option("--density", generate.density, "Probability of a nonzero Selling parameter");
  generateCmd->add_option("--seed", generate.seed, "Random seed");
  generateCmd->add_option("-o,--out", generate.out, "Output file (default stdout)");
  generateCmd->add_option("--name", generate.name, "Name stored in the file");

  VerifyArgs verify;
  auto* verifyCmd = app.add_subcommand("verify", "Cross-check the decoder against exhaustive oracles");
  addLatticeSource(verifyCmd, verify.lattice);
  verifyCmd->add_option("--random", verify.randomN, "Use random lattices of this dimension");
  verifyCmd->add_option("--trials", verify.trials, "Number of random lattices");
  verifyCmd->add_option("--targets", verify.targets, "Targets per lattice");
  verifyCmd->add_option("--seed", verify.seed, "Random seed");
  verifyCmd->add_option("--tolerance", verify.tolerance, "Relative termination tolerance");

  BenchArgs bench;
  auto* benchCmd = app.add_subcommand("bench", "Decode timing against lattice dimension");
  benchCmd->add_option("--n", bench.nList, "Dimensions, e.g. 16,32,64")->delimiter(',');
  benchCmd->add_option("--trials", bench.trials, "Lattices per dimension");
  benchCmd->add_option("--seed", bench.seed, "Random seed");
  benchCmd->add_option("--density", bench.density, "Selling parameter density");
  benchCmd->add_option("-o,--out", bench.out, "CSV output file (also echoed to stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  out.imbue(std::locale::classic());
  if (*decodeCmd) return cmdDecode(decode, out, err);
  if (*generateCmd) return cmdGenerate(generate, out, err);
  if (*verifyCmd) return cmdVerify(verify, out, err);
  if (*benchCmd) return cmdBench(bench, out, err);
  return kInvalidInput;
}

}  // namespace vfk::cli
