// ranksign: command-line front end for the rank-metric signature scheme.
//
// Subcommands: keygen, sign, verify, estimate, bounds, density-experiment,
// bench. Exit codes: 0 success/accept, 1 verify reject, 2 usage or format
// error. All randomized subcommands are deterministic for a fixed --rng-seed
// (env RANKSIGN_RNG_SEED is the fallback); --machine switches the report
// subcommands to line-stable key=value output.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ranksign/bounds.hpp"
#include "ranksign/estimator.hpp"
#include "ranksign/lrpc.hpp"
#include "ranksign/params.hpp"
#include "ranksign/ranksign.hpp"
#include "ranksign/wire.hpp"

using namespace ranksign;

namespace {

// ------------------------------------------------------------------- plumbing

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& b) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(b.data()),
            static_cast<std::streamsize>(b.size()));
  if (!out) throw Error("short write to " + path);
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

// Fixed precision with trailing zeros removed: 80 -> "80", not "80.0000".
std::string fmt_trim(double x, int digits = 4) {
  std::string s = fmt(x, digits);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// Shared option state filled by CLI11.
struct Config {
  std::string params_spec = "table1-row2";
  std::optional<unsigned> p, qexp, m, n, k, d, t, tprime, rprime;
  std::optional<std::uint64_t> seed_flag;
  std::uint64_t trials = 1000;
  bool machine = false;

  std::string key_path, sig_path, out_path, in_path;
  std::optional<std::string> message;
};

// --params accepts a preset name or an inline "p=2,a=8,m=18,..." block;
// the dedicated flags then override individual fields.
CodeParams resolve_params(const Config& cfg) {
  CodeParams P;
  if (cfg.params_spec.find('=') == std::string::npos) {
    P = preset(cfg.params_spec);
  } else {
    std::stringstream ss(cfg.params_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw BadParams("inline parameter '" + item + "' is not key=value");
      }
      const std::string key = item.substr(0, eq);
      const unsigned value =
          static_cast<unsigned>(std::stoul(item.substr(eq + 1)));
      if (key == "p") P.p = value;
      else if (key == "a") P.a = value;
      else if (key == "m") P.m = value;
      else if (key == "n") P.n = value;
      else if (key == "k") P.k = value;
      else if (key == "d") P.d = value;
      else if (key == "t") P.t = value;
      else if (key == "tprime" || key == "t'") P.tprime = value;
      else if (key == "rprime" || key == "r'") P.rprime = value;
      else throw BadParams("unknown inline parameter '" + key + "'");
    }
  }
  if (cfg.p) P.p = *cfg.p;
  if (cfg.qexp) P.a = *cfg.qexp;
  if (cfg.m) P.m = *cfg.m;
  if (cfg.n) P.n = *cfg.n;
  if (cfg.k) P.k = *cfg.k;
  if (cfg.d) P.d = *cfg.d;
  if (cfg.t) P.t = *cfg.t;
  if (cfg.tprime) P.tprime = *cfg.tprime;
  if (cfg.rprime) P.rprime = *cfg.rprime;
  P.validate();
  return P;
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed_flag) return *cfg.seed_flag;
  if (const char* env = std::getenv("RANKSIGN_RNG_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw BadParams("RANKSIGN_RNG_SEED is not an unsigned integer");
    }
  }
  return 0x52414e4b5349ull;  // fixed default keeps every run reproducible
}

std::vector<std::uint8_t> resolve_message(const Config& cfg) {
  if (cfg.message && !cfg.in_path.empty()) {
    throw BadParams("--message and --in are mutually exclusive");
  }
  if (cfg.message) {
    return std::vector<std::uint8_t>(cfg.message->begin(), cfg.message->end());
  }
  if (!cfg.in_path.empty()) return read_file(cfg.in_path);
  throw BadParams("a message is required (--message or --in)");
}

void emit(bool machine, const std::string& key, const std::string& value,
          const std::string& human) {
  if (machine) {
    std::cout << key << "=" << value << "\n";
  } else {
    std::cout << human << "\n";
  }
}

// ---------------------------------------------------------------- subcommands

int cmd_keygen(const Config& cfg) {
  const CodeParams P = resolve_params(cfg);
  Prng rng(resolve_seed(cfg));
  const KeyPair kp = keygen(P, rng);
  const std::string prefix = cfg.out_path.empty() ? "ranksign_key" : cfg.out_path;
  const std::vector<std::uint8_t> pk = wire::encode_public(kp.pk);
  const std::vector<std::uint8_t> sk = wire::encode_secret(kp.sk);
  write_file(prefix + ".rkpk", pk);
  write_file(prefix + ".rksk", sk);
  emit(cfg.machine, "pk_file", prefix + ".rkpk",
       "public key  " + prefix + ".rkpk  (" + std::to_string(pk.size()) +
           " bytes)");
  emit(cfg.machine, "sk_file", prefix + ".rksk",
       "secret key  " + prefix + ".rksk  (" + std::to_string(sk.size()) +
           " bytes)");
  if (cfg.machine) {
    std::cout << "pk_bytes=" << pk.size() << "\n"
              << "sk_bytes=" << sk.size() << "\n";
  }
  return 0;
}

int cmd_sign(const Config& cfg) {
  if (cfg.key_path.empty()) throw BadParams("--key <file.rksk> is required");
  const SecretKey sk = wire::decode_secret(read_file(cfg.key_path));
  const PublicKey pk = derive_public(sk);
  const std::vector<std::uint8_t> msg = resolve_message(cfg);
  Prng rng(resolve_seed(cfg));
  SignStats st;
  const Signature sig = sign(sk, pk, msg, rng, &st);
  const std::string out =
      cfg.out_path.empty() ? "message.rksig" : cfg.out_path;
  const std::vector<std::uint8_t> enc = wire::encode_signature(sk.params, sig);
  write_file(out, enc);
  emit(cfg.machine, "sig_file", out,
       "signature   " + out + "  (" + std::to_string(enc.size()) +
           " bytes, " + std::to_string(st.attempts) + " attempt(s))");
  if (cfg.machine) {
    std::cout << "sig_bytes=" << enc.size() << "\n"
              << "attempts=" << st.attempts << "\n";
  }
  return 0;
}

int cmd_verify(const Config& cfg) {
  if (cfg.key_path.empty()) throw BadParams("--key <file.rkpk> is required");
  if (cfg.sig_path.empty()) throw BadParams("--sig <file.rksig> is required");
  const PublicKey pk = wire::decode_public(read_file(cfg.key_path));
  const Signature sig =
      wire::decode_signature(pk.params, read_file(cfg.sig_path));
  const std::vector<std::uint8_t> msg = resolve_message(cfg);
  const bool ok = verify(pk, msg, sig);
  emit(cfg.machine, "accept", ok ? "1" : "0", ok ? "accept" : "reject");
  return ok ? 0 : 1;
}

int cmd_estimate(const Config& cfg) {
  const CodeParams P = resolve_params(cfg);
  const SecurityReport rep = full_report(P);
  if (cfg.machine) {
    std::cout << "p=" << P.p << "\na=" << P.a << "\nm=" << P.m << "\nn=" << P.n
              << "\nk=" << P.k << "\nd=" << P.d << "\nt=" << P.t
              << "\ntprime=" << P.tprime << "\nrprime=" << P.rprime << "\n";
    std::cout << "pk=" << static_cast<std::uint64_t>(rep.pk_bits) << "\n"
              << "sig=" << static_cast<std::uint64_t>(rep.sig_bits) << "\n"
              << "gvr=" << rep.gvr_aug << "\n"
              << "singleton=" << rep.singleton_aug << "\n"
              << "rsd_threshold=" << rep.rsd_threshold << "\n"
              << "density_exponent=" << rep.density_exp << "\n";
    std::cout << "ds=" << fmt_trim(rep.attack_bits.at("DS")) << "\n"
              << "dual=" << fmt_trim(rep.attack_bits.at("Dual")) << "\n"
              << "da=" << fmt_trim(rep.attack_bits.at("DA")) << "\n"
              << "isometry=" << fmt_trim(rep.attack_bits.at("Isometry")) << "\n"
              << "support_guess=" << fmt_trim(rep.attack_bits.at("SupportGuess"))
              << "\n";
    std::cout << "best=" << rep.best_attack << "\n";
    std::string subs;
    for (const std::string& s : rep.sub_128bit) {
      subs += (subs.empty() ? "" : ",") + s;
    }
    std::cout << "sub128=" << subs << "\n";
    std::cout << "lp=" << (rep.lp ? *rep.lp : "n/a") << "\n";
    return 0;
  }
  std::cout << "parameters        q=" << P.p << "^" << P.a << " m=" << P.m
            << " n=" << P.n << " k=" << P.k << " d=" << P.d << " t=" << P.t
            << " t'=" << P.tprime << " r'=" << P.rprime << " (r=" << P.r()
            << ")\n";
  std::cout << "public key        " << static_cast<std::uint64_t>(rep.pk_bits)
            << " bits\n";
  std::cout << "signature         " << static_cast<std::uint64_t>(rep.sig_bits)
            << " bits\n";
  std::cout << "GVR / Singleton   " << rep.gvr_aug << " / " << rep.singleton_aug
            << "  (augmented [" << P.npub() << "," << P.kpub() << "] code)\n";
  std::cout << "App-RSD easy at   r >= " << rep.rsd_threshold << "\n";
  std::cout << "density exponent  " << rep.density_exp << "\n";
  std::cout << "attack costs (log2 operations):\n";
  for (const auto& [name, bits] : rep.attack_bits) {
    std::cout << "  " << std::left << std::setw(14) << name << fmt(bits, 2)
              << "\n";
  }
  std::cout << "best attack       " << rep.best_attack << "\n";
  if (!rep.sub_128bit.empty()) {
    std::cout << "below 128 bits   ";
    for (const std::string& s : rep.sub_128bit) std::cout << " " << s;
    std::cout << "\n";
  }
  if (rep.lp) std::cout << "LP (quoted)       " << *rep.lp << "\n";
  return 0;
}

// Shared by `bounds` and `density-experiment`: the exhaustive T-decodable
// count next to its two-sided bound, feasible only at toy scale.
void emit_brute_force_block(const Config& cfg, const CodeParams& P,
                            Prng& rng) {
  const BigInt space = big_pow(q_of(P), P.m * P.nk());
  if (space > (BigInt(1) << 24)) {
    emit(cfg.machine, "brute_feasible", "0",
         "exhaustive count      skipped (syndrome space above 2^24)");
    return;
  }
  const LrpcCode code = gen_code(P, rng);
  const FieldContext& ctx = code.ctx();
  const Subspace F = code.support();
  Subspace T = Subspace::zero(ctx);
  for (unsigned tries = 0;; ++tries) {
    T = Subspace::sample(ctx, P.t, rng);
    if (Subspace::product_space(F, T).dim() == P.t * P.d) break;
    if (tries > 4096) throw ResourceExhausted("erasure space sampling");
  }
  const BigInt count = brute_force_tdecodable(P, code.Fbasis, T);
  const TDecodableBounds b = tdecodable_bounds(P);
  const bool within = BigRat(count) >= b.lower && count <= b.upper;
  // The lower bound carries a (1 - 1/(q-1))^2 factor, identically zero at
  // q = 2; report it as -inf instead of taking log2 of zero.
  const std::string lo =
      b.lower == 0 ? "-inf" : fmt(log2_big(b.lower), cfg.machine ? 4 : 3);
  if (cfg.machine) {
    std::cout << "brute_feasible=1\n"
              << "brute_count=" << count << "\n"
              << "brute_lo_bits=" << lo << "\n"
              << "brute_hi_bits=" << fmt(log2_big(b.upper)) << "\n"
              << "brute_within=" << (within ? 1 : 0) << "\n";
  } else {
    std::cout << "exhaustive count      " << count << " T-decodable syndromes"
              << (within ? " (inside" : " (OUTSIDE")
              << " the two-sided bound, log2 in [" << lo << ", "
              << fmt(log2_big(b.upper), 3) << "])\n";
  }
}

int cmd_bounds(const Config& cfg) {
  const CodeParams P = resolve_params(cfg);
  Prng rng(resolve_seed(cfg));
  const BigInt q = q_of(P);
  const unsigned r = P.r();
  const double s_bits = log2_big(sphere_size(P.npub(), P.m, q, r));
  const double b_bits = log2_big(ball_size(P.npub(), P.m, q, r));
  const unsigned g = gvr(P.npub(), P.kpub(), P.m, q);
  const unsigned sing = singleton(P.npub(), P.kpub(), P.m);
  const BigInt et = count_superspaces(P.m, q, P.t, P.rprime);
  const long long de = density_exponent(P);

  if (cfg.machine) {
    std::cout << "r=" << r << "\n"
              << "s_bits=" << fmt(s_bits) << "\n"
              << "b_bits=" << fmt(b_bits) << "\n"
              << "gvr=" << g << "\n"
              << "singleton=" << sing << "\n"
              << "et_bits=" << fmt(log2_big(et)) << "\n"
              << "density_exponent=" << de << "\n";
  } else {
    std::cout << "sphere |S(" << P.npub() << "," << P.m << ",q," << r
              << ")|    2^" << fmt(s_bits, 2) << "\n";
    std::cout << "ball   |B(" << P.npub() << "," << P.m << ",q," << r
              << ")|    2^" << fmt(b_bits, 2) << "\n";
    std::cout << "GVR                   " << g << "\n";
    std::cout << "Singleton             " << sing << "\n";
    std::cout << "erasure supports E(T) 2^" << fmt(log2_big(et), 2) << " ("
              << "dim-" << r << " superspaces of a dim-" << P.t << " T)\n";
    std::cout << "density exponent      " << de
              << (de >= 0 ? "  (decoding density ~ 1)" : "") << "\n";
  }
  emit_brute_force_block(cfg, P, rng);
  return 0;
}

int cmd_density_experiment(const Config& cfg) {
  const CodeParams P = resolve_params(cfg);
  Prng rng(resolve_seed(cfg));
  const LrpcCode code = gen_code(P, rng);
  const FieldContext& ctx = code.ctx();
  const Subspace F = code.support();

  std::uint64_t successes = 0;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    Prng trial = rng.derive(i);
    Subspace T = Subspace::zero(ctx);
    for (unsigned tries = 0;; ++tries) {
      T = Subspace::sample(ctx, P.t, trial);
      if (Subspace::product_space(F, T).dim() == P.t * P.d) break;
      if (tries > 4096) throw ResourceExhausted("erasure space sampling");
    }
    std::vector<ExtElem> s;
    s.reserve(P.nk());
    for (unsigned j = 0; j < P.nk(); ++j) s.push_back(ctx.sample(trial));
    if (decode(code, s, T).ok) ++successes;
  }
  const double rate =
      static_cast<double>(successes) / static_cast<double>(cfg.trials);
  if (cfg.machine) {
    std::cout << "trials=" << cfg.trials << "\n"
              << "successes=" << successes << "\n"
              << "rate=" << fmt(rate) << "\n";
  } else {
    std::cout << "decoded " << successes << " of " << cfg.trials
              << " uniform syndromes (rate " << fmt(rate) << ")\n";
  }
  emit_brute_force_block(cfg, P, rng);
  return 0;
}

int cmd_bench(const Config& cfg) {
  const CodeParams P = resolve_params(cfg);
  Prng rng(resolve_seed(cfg));
  const std::uint64_t trials = cfg.trials;

  const auto t0 = std::chrono::steady_clock::now();
  const KeyPair kp = keygen(P, rng);
  const auto t1 = std::chrono::steady_clock::now();

  std::vector<std::vector<std::uint8_t>> msgs;
  msgs.reserve(trials);
  for (std::uint64_t i = 0; i < trials; ++i) msgs.push_back(rng.bytes(32));

  std::vector<Signature> sigs;
  sigs.reserve(trials);
  std::uint64_t attempts = 0;
  const auto t2 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < trials; ++i) {
    SignStats st;
    sigs.push_back(sign(kp.sk, kp.pk, msgs[i], rng, &st));
    attempts += st.attempts;
  }
  const auto t3 = std::chrono::steady_clock::now();
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    accepted += verify(kp.pk, msgs[i], sigs[i]) ? 1 : 0;
  }
  const auto t4 = std::chrono::steady_clock::now();

  const double keygen_s = std::chrono::duration<double>(t1 - t0).count();
  const double sign_s = std::chrono::duration<double>(t3 - t2).count();
  const double verify_s = std::chrono::duration<double>(t4 - t3).count();
  const double mean_attempts =
      static_cast<double>(attempts) / static_cast<double>(trials);

  if (accepted != trials) {
    throw Error("bench: " + std::to_string(trials - accepted) +
                " signatures failed to verify");
  }
  if (cfg.machine) {
    std::cout << "trials=" << trials << "\n"
              << "keygen_ms=" << fmt(keygen_s * 1e3, 3) << "\n"
              << "sign_per_s=" << fmt(trials / sign_s, 1) << "\n"
              << "verify_per_s=" << fmt(trials / verify_s, 1) << "\n"
              << "mean_attempts=" << fmt(mean_attempts) << "\n";
  } else {
    std::cout << "keygen          " << fmt(keygen_s * 1e3, 2) << " ms\n"
              << "sign            " << fmt(trials / sign_s, 1) << " ops/s ("
              << fmt(mean_attempts, 3) << " decode attempts per signature)\n"
              << "verify          " << fmt(trials / verify_s, 1) << " ops/s\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-metric hash-and-sign signatures over LRPC codes"};
  app.require_subcommand(1);

  Config cfg;

  const auto add_common = [&](CLI::App* sub, bool with_params) {
    if (with_params) {
      sub->add_option("--params", cfg.params_spec,
                      "preset name or inline p=..,a=..,m=..,... block");
      sub->add_option("--p", cfg.p, "base field characteristic");
      sub->add_option("--q-exp", cfg.qexp, "exponent a in q = p^a");
      sub->add_option("--m", cfg.m, "extension degree");
      sub->add_option("--n", cfg.n, "code length");
      sub->add_option("--k", cfg.k, "code dimension");
      sub->add_option("--d", cfg.d, "dual support dimension");
      sub->add_option("--t", cfg.t, "erasure dimension");
      sub->add_option("--tprime", cfg.tprime, "augmentation columns t'");
      sub->add_option("--rprime", cfg.rprime, "error dimension r'");
    }
    sub->add_option("--rng-seed", cfg.seed_flag,
                    "seed (fallback: RANKSIGN_RNG_SEED, then a fixed default)");
    sub->add_flag("--machine", cfg.machine, "key=value output");
  };

  CLI::App* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
  add_common(keygen_cmd, true);
  keygen_cmd->add_option("--out", cfg.out_path,
                         "output prefix (writes <out>.rkpk and <out>.rksk)");

  CLI::App* sign_cmd = app.add_subcommand("sign", "sign a message");
  add_common(sign_cmd, false);
  sign_cmd->add_option("--key", cfg.key_path, "secret key (.rksk)");
  sign_cmd->add_option("--in", cfg.in_path, "message file");
  sign_cmd->add_option("--message", cfg.message, "message string");
  sign_cmd->add_option("--out", cfg.out_path, "signature output (.rksig)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify a signature");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--key", cfg.key_path, "public key (.rkpk)");
  verify_cmd->add_option("--in", cfg.in_path, "message file");
  verify_cmd->add_option("--message", cfg.message, "message string");
  verify_cmd->add_option("--sig", cfg.sig_path, "signature file (.rksig)");

  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "security estimate for a parameter set");
  add_common(estimate_cmd, true);

  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "sphere/ball sizes, GVR, Singleton, erasure-support count");
  add_common(bounds_cmd, true);

  CLI::App* density_cmd = app.add_subcommand(
      "density-experiment", "empirical decoding density on uniform syndromes");
  add_common(density_cmd, true);
  density_cmd->add_option("--trials", cfg.trials, "number of trials");

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "sign/verify throughput measurement");
  add_common(bench_cmd, true);
  bench_cmd->add_option("--trials", cfg.trials, "number of signatures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (keygen_cmd->parsed()) return cmd_keygen(cfg);
    if (sign_cmd->parsed()) return cmd_sign(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (estimate_cmd->parsed()) return cmd_estimate(cfg);
    if (bounds_cmd->parsed()) return cmd_bounds(cfg);
    if (density_cmd->parsed()) return cmd_density_experiment(cfg);
    if (bench_cmd->parsed()) return cmd_bench(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: require_subcommand(1)
}
