#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cltwe/clt.hpp"
#include "cltwe/error.hpp"
#include "cltwe/exact_cover.hpp"
#include "cltwe/hex.hpp"
#include "cltwe/pentomino.hpp"
#include "cltwe/sudoku.hpp"
#include "cltwe/witness_enc.hpp"
#include "cltwe/zeroizing.hpp"

namespace cltwe::cli {
namespace {

namespace fs = std::filesystem;

// Plain I/O failures map to the usage status.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation failed for a reason the user can act on (status 2).
struct OpFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

// Temp file in the target directory, then rename over the target.
void write_file_atomic(const std::string& path, const std::string& data) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << data;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("error writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path + "'");
  }
}

std::vector<std::uint8_t> parse_seed(const std::string& hex) {
  if (hex.empty()) throw ParameterError("--seed must be non-empty hex");
  try {
    return bytes_from_hex(hex);
  } catch (const std::invalid_argument&) {
    throw ParameterError("--seed must be an even-length hex string");
  }
}

std::string first_token(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = text.find_first_of(" \t\r\n", b);
  return std::string(text.substr(b, e == std::string_view::npos ? e : e - b));
}

void emit(const std::string& data, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
  } else {
    write_file_atomic(path, data);
  }
}

// --- reduce ----------------------------------------------------------------

struct ReduceOpts {
  std::string kind, input, output;
};

int cmd_reduce(const ReduceOpts& o, std::ostream& out) {
  const std::string text = read_file(o.input);
  ExactCoverInstance inst;
  if (o.kind == "sudoku") {
    inst = sudoku_to_cover(parse_sudoku(text)).first;
  } else {
    inst = pentomino_to_cover(parse_pentomino(text)).instance;
  }
  emit(format_cover(inst), o.output, out);
  if (!o.output.empty() && o.output != "-") {
    out << "universe " << inst.universe_size() << ", sets " << inst.set_count() << '\n';
  }
  return kOk;
}

// --- solve -----------------------------------------------------------------

struct SolveOpts {
  std::string cover, puzzle, output;
  std::uint64_t limit = kDefaultNodeLimit;
};

int cmd_solve(const SolveOpts& o, std::ostream& out, std::ostream& err) {
  ExactCoverInstance inst = parse_cover(read_file(o.cover));

  std::optional<SudokuPuzzle> sudoku;
  std::optional<CandidateMap> cmap;
  std::optional<PentominoBoard> board;
  std::optional<PentominoCover> pcover;
  if (!o.puzzle.empty()) {
    const std::string text = read_file(o.puzzle);
    const std::string kind = first_token(text);
    ExactCoverInstance expected;
    if (kind == "sudoku") {
      sudoku = parse_sudoku(text);
      auto reduced = sudoku_to_cover(*sudoku);
      expected = std::move(reduced.first);
      cmap = std::move(reduced.second);
    } else if (kind == "pentomino") {
      board = parse_pentomino(text);
      pcover = pentomino_to_cover(*board);
      expected = pcover->instance;
    } else {
      throw ParseError("unknown puzzle type '" + kind + "'", 1);
    }
    if (!(expected == inst)) throw OpFailure("puzzle does not reduce to this cover instance");
  }

  const SolveResult r = solve(inst, o.limit);
  if (r.status == SolveStatus::kNoSolution) {
    err << "no exact cover exists (" << r.nodes << " nodes)\n";
    return kFailed;
  }
  if (r.status == SolveStatus::kLimitExceeded) {
    err << "node limit " << o.limit << " exceeded\n";
    return kFailed;
  }
  emit(format_witness(*r.witness), o.output, out);
  if (sudoku) {
    out << format_sudoku(sudoku_from_witness(*sudoku, *cmap, *r.witness));
  } else if (board) {
    out << render_tiling(*board, *pcover, *r.witness);
  }
  return kOk;
}

// --- encrypt / decrypt -----------------------------------------------------

struct EncryptOpts {
  std::string cover, message_hex, seed, output, keep_secrets;
  std::size_t lambda = 0;
};

int cmd_encrypt(const EncryptOpts& o, std::ostream& out) {
  const ExactCoverInstance inst = parse_cover(read_file(o.cover));
  const MessageBits msg = MessageBits::from_hex(o.message_hex);
  const auto seed = parse_seed(o.seed);
  if (!o.keep_secrets.empty()) {
    DebugEncryption dbg = encrypt_keep_secrets(inst, msg, o.lambda, seed);
    write_file_atomic(o.keep_secrets, serialize_secrets(dbg.secret));
    emit(serialize(dbg.ciphertext), o.output, out);
  } else {
    emit(serialize(encrypt(inst, msg, o.lambda, seed)), o.output, out);
  }
  return kOk;
}

struct DecryptOpts {
  std::string ct, witness, puzzle, sudoku_solution, output;
};

int cmd_decrypt(const DecryptOpts& o, std::ostream& out, std::ostream& err) {
  const Ciphertext ct = deserialize(read_file(o.ct));
  Witness w;
  if (!o.witness.empty()) {
    w = parse_witness(read_file(o.witness));
  } else {
    const SudokuPuzzle puzzle = parse_sudoku(read_file(o.puzzle));
    const std::string solution_text = read_file(o.sudoku_solution);
    auto [inst, cmap] = sudoku_to_cover(puzzle);
    if (!(inst == ct.instance)) throw OpFailure("puzzle does not match the ciphertext's instance");
    try {
      w = sudoku_witness(puzzle, parse_sudoku(solution_text), cmap);
    } catch (const PuzzleError& e) {
      // a grid that repeats a digit is a wrong solution, not a malformed file
      err << "witness rejected: " << e.what() << '\n';
      return kFailed;
    } catch (const SolutionError& e) {
      err << "witness rejected: " << e.what() << '\n';
      return kFailed;
    }
  }

  std::optional<MessageBits> m;
  try {
    m = decrypt(ct, w);
  } catch (const WitnessError& e) {
    err << "witness rejected: " << e.what() << '\n';
    return kFailed;
  }
  if (!m) {
    err << "witness rejected\n";
    return kFailed;
  }
  emit(m->to_hex() + "\n", o.output, out);
  return kOk;
}

// --- attack ----------------------------------------------------------------

struct AttackOpts {
  std::size_t n = 4, eta = 64, eps = 16;
  std::size_t lambda = 12, kappa = 3;
  std::size_t retries = kDefaultAttackRetries;
  std::string seed, pp, output, keep_secrets;
};

void report(const AttackResult& r, double seconds, std::ostream& out) {
  out << "status   " << to_string(r.status) << '\n';
  out << "trials   " << r.trials_used << '\n';
  for (std::size_t i = 0; i < r.primes.size(); ++i) {
    out << "p[" << i << "]     " << to_hex(r.primes[i]) << '\n';
  }
  out << "time     " << std::fixed << std::setprecision(3) << seconds << " s\n";
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_attack_demo(const AttackOpts& o, std::ostream& out) {
  const auto seed = parse_seed(o.seed);
  CrtAcdInstance inst = CrtAcdInstance::generate(o.n, o.eta, o.eps, seed);
  const auto t0 = std::chrono::steady_clock::now();
  const AttackResult r = attack_crt_acd(inst, o.retries);
  report(r, since(t0), out);
  if (r.status != AttackStatus::kSuccess) return kFailed;
  auto planted = inst.planted_primes();
  std::sort(planted.begin(), planted.end());
  const bool match = planted == r.primes;
  out << "planted  " << (match ? "match" : "MISMATCH") << '\n';
  return match ? kOk : kFailed;
}

int cmd_attack_gen(const AttackOpts& o, std::ostream& out) {
  const auto seed = parse_seed(o.seed);
  CltInstance inst = instance_gen(derive_attack_params(o.lambda, o.kappa), seed);
  if (!o.keep_secrets.empty()) write_file_atomic(o.keep_secrets, serialize_secrets(inst.secret));
  emit(serialize_symmetric_public(inst.pub, *inst.symmetric), o.output, out);
  return kOk;
}

int cmd_attack_clt(const AttackOpts& o, std::ostream& out) {
  const auto seed = parse_seed(o.seed);
  const auto [pp, pub] = parse_symmetric_public(read_file(o.pp));
  const auto t0 = std::chrono::steady_clock::now();
  const AttackResult r = attack_clt(pp, pub, seed, o.retries);
  report(r, since(t0), out);
  return r.status == AttackStatus::kSuccess ? kOk : kFailed;
}

// --- params ----------------------------------------------------------------

struct ParamsOpts {
  std::size_t lambda = 0, universe = 0;
  std::optional<std::size_t> sets;
  std::size_t bits = 256;
};

constexpr std::size_t kStretchBytes = std::size_t{1} << 20;

int cmd_params(const ParamsOpts& o, std::ostream& out) {
  const SystemParams p = derive_params(o.lambda, o.universe);
  const std::size_t sets = o.sets.value_or(o.universe);
  // Every encoding is an integer below x0, i.e. about n * eta bits.
  const double bits = static_cast<double>(sets + o.bits) * static_cast<double>(p.n_primes) *
                      static_cast<double>(p.eta);
  const auto bytes = static_cast<std::size_t>(bits / 8.0);
  out << "lambda       " << p.lambda << '\n'
      << "universe     " << p.universe << '\n'
      << "n_primes     " << p.n_primes << '\n'
      << "eta          " << p.eta << '\n'
      << "alpha        " << p.alpha << '\n'
      << "rho          " << p.rho << '\n'
      << "beta         " << p.beta << '\n'
      << "nu           " << p.nu << '\n'
      << "max_degree   " << p.max_degree << '\n'
      << "x0_bits      " << p.n_primes * p.eta << '\n'
      << "sets         " << sets << '\n'
      << "message_bits " << o.bits << '\n'
      << "ct_bytes     ~" << bytes << '\n'
      << "scale        " << (bytes > kStretchBytes ? "stretch scale" : "desk scale") << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witness encryption for Exact Cover over CLT13-style graded encodings", "cltwe"};
  app.require_subcommand(1);

  ReduceOpts reduce_o;
  auto* reduce = app.add_subcommand("reduce", "Reduce a puzzle file to an exact-cover instance");
  reduce->add_option("kind", reduce_o.kind, "Puzzle type")
      ->required()
      ->check(CLI::IsMember({"sudoku", "pentomino"}));
  reduce->add_option("input", reduce_o.input, "Puzzle file")->required();
  reduce->add_option("-o,--output", reduce_o.output, "Cover file (stdout if omitted)");

  SolveOpts solve_o;
  auto* solve_cmd = app.add_subcommand("solve", "Find an exact cover with Algorithm X");
  solve_cmd->add_option("cover", solve_o.cover, "Cover file")->required();
  solve_cmd->add_option("--limit", solve_o.limit, "Node limit")->capture_default_str();
  solve_cmd->add_option("--puzzle", solve_o.puzzle, "Puzzle the cover came from; prints the solution");
  solve_cmd->add_option("-o,--output", solve_o.output, "Witness file (stdout if omitted)");

  EncryptOpts enc_o;
  auto* enc = app.add_subcommand("encrypt", "Encrypt a message to a cover instance");
  enc->add_option("--cover", enc_o.cover, "Cover file")->required();
  enc->add_option("--message-hex", enc_o.message_hex, "Message as hex")->required();
  enc->add_option("--lambda", enc_o.lambda, "Security parameter")->required();
  enc->add_option("--seed", enc_o.seed, "Seed as hex")->required();
  enc->add_option("-o,--output", enc_o.output, "Ciphertext file (stdout if omitted)");
  enc->add_option("--keep-secrets", enc_o.keep_secrets, "Also dump the trapdoor here (debug)");

  DecryptOpts dec_o;
  auto* dec = app.add_subcommand("decrypt", "Decrypt with an exact cover");
  dec->add_option("--ct", dec_o.ct, "Ciphertext file")->required();
  auto* w_opt = dec->add_option("--witness", dec_o.witness, "Witness file (set indices)");
  auto* p_opt = dec->add_option("--puzzle", dec_o.puzzle, "Sudoku puzzle file");
  auto* s_opt = dec->add_option("--sudoku-solution", dec_o.sudoku_solution, "Solved sudoku grid");
  p_opt->needs(s_opt);
  s_opt->needs(p_opt);
  w_opt->excludes(p_opt);
  w_opt->excludes(s_opt);
  dec->add_option("-o,--output", dec_o.output, "Plaintext file (stdout if omitted)");

  AttackOpts att_o;
  auto* attack = app.add_subcommand("attack", "Zeroizing attack demos");
  attack->require_subcommand(1);
  auto* demo = attack->add_subcommand("demo", "Attack a planted CRT-ACD instance");
  demo->add_option("--n", att_o.n, "Number of primes")->capture_default_str();
  demo->add_option("--eta", att_o.eta, "Prime bits")->capture_default_str();
  demo->add_option("--eps", att_o.eps, "Residue bits")->capture_default_str();
  demo->add_option("--seed", att_o.seed, "Seed as hex")->required();
  demo->add_option("--retries", att_o.retries, "Maximum trials")->capture_default_str();
  auto* gen = attack->add_subcommand("gen", "Generate a symmetric instance's public values");
  gen->add_option("--lambda", att_o.lambda, "Security parameter")->capture_default_str();
  gen->add_option("--kappa", att_o.kappa, "Multilinearity")->capture_default_str();
  gen->add_option("--seed", att_o.seed, "Seed as hex")->required();
  gen->add_option("-o,--output", att_o.output, "Public file (stdout if omitted)");
  gen->add_option("--keep-secrets", att_o.keep_secrets, "Also dump the trapdoor here");
  auto* clt = attack->add_subcommand("clt", "Attack a symmetric instance's public values");
  clt->add_option("--pp", att_o.pp, "Public file from 'attack gen'")->required();
  clt->add_option("--seed", att_o.seed, "Seed for retry subset sums")->required();
  clt->add_option("--retries", att_o.retries, "Maximum trials")->capture_default_str();

  ParamsOpts par_o;
  auto* params = app.add_subcommand("params", "Print derived parameters and a size estimate");
  params->add_option("--lambda", par_o.lambda, "Security parameter")->required();
  params->add_option("--universe", par_o.universe, "Universe size U")->required();
  params->add_option("--sets", par_o.sets, "Set count (defaults to U)");
  params->add_option("--bits", par_o.bits, "Message bits")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*reduce) return cmd_reduce(reduce_o, out);
    if (*solve_cmd) return cmd_solve(solve_o, out, err);
    if (*enc) return cmd_encrypt(enc_o, out);
    if (*dec) {
      if (dec_o.witness.empty() && dec_o.puzzle.empty()) {
        err << "decrypt: need --witness or --puzzle with --sudoku-solution\n";
        return kUsage;
      }
      return cmd_decrypt(dec_o, out, err);
    }
    if (*demo) return cmd_attack_demo(att_o, out);
    if (*gen) return cmd_attack_gen(att_o, out);
    if (*clt) return cmd_attack_clt(att_o, out);
    if (*params) return cmd_params(par_o, out);
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kFormat;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kFormat;
  } catch (const PuzzleError& e) {
    err << "invalid puzzle: " << e.what() << '\n';
    return kFormat;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kUsage;
  } catch (const OpFailure& e) {
    err << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace cltwe::cli
