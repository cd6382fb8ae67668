// Copyright 2026 The rsibe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rsibe/analysis.h"
#include "rsibe/codec.h"
#include "rsibe/error.h"
#include "rsibe/scheme.h"

namespace rsibe::cli {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string workspace = ".";
  std::string backend = "mock";
  std::string variant = "wei";
  std::string mode = "bit-corrected";
  std::string seed = "0";
  bool trace = false;
  // Set when the flag was given explicitly, so loaded artifacts can be
  // checked against it.
  bool backend_given = false;
  bool variant_given = false;
};

std::uint64_t ParseSeed(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 16 ||
      digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    Throw(ErrorCode::kInvalidParameter, "seed must be up to 16 hex digits");
  }
  return std::stoull(digits, nullptr, 16);
}

class Workspace {
 public:
  explicit Workspace(const Globals& g) : g_(g), dir_(g.workspace) {}

  fs::path Path(const std::string& name) const { return dir_ / name; }

  Json Read(const std::string& name) const {
    std::ifstream in(Path(name));
    if (!in) Throw(ErrorCode::kDecodeError, "missing file: " + Path(name).string());
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) Throw(ErrorCode::kDecodeError, "not valid JSON: " + name);
    return j;
  }

  void Write(const std::string& name, const Json& j) const {
    fs::create_directories(dir_);
    std::ofstream out(Path(name), std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out) Throw(ErrorCode::kDecodeError, "cannot write " + Path(name).string());
  }

  PublicParams LoadPp() const {
    PublicParams pp = PublicParamsFromJson(Read("pp.json"));
    if (g_.backend_given && ParseBackend(g_.backend) != pp.kind()) {
      Throw(ErrorCode::kBackendMismatch, std::string("workspace uses the ") +
                                             BackendName(pp.kind()) + " backend");
    }
    return pp;
  }

 private:
  const Globals& g_;
  fs::path dir_;
};

// One stream per command and argument tuple, so repeated invocations with
// the same seed but different targets do not share draws.
Randomness CommandRng(const Globals& g, Backend backend, const std::string& domain) {
  if (g.trace && backend != Backend::kMock) {
    Throw(ErrorCode::kRequiresMockBackend, "--trace needs the mock backend");
  }
  return Randomness(ParseSeed(g.seed), "cli." + domain, g.trace);
}

void AttachTrace(Json& j, const Randomness& rng) {
  if (rng.tracing()) j["trace"] = TraceToJson(rng);
}

std::string StateName() { return "state.json"; }
std::string SkName(const Identity& id) { return "sk." + id.ToString() + ".json"; }
std::string KuName(TimePeriod t) { return "ku." + std::to_string(t.value) + ".json"; }
std::string DkName(const Identity& id, TimePeriod t) {
  return "dk." + id.ToString() + "." + std::to_string(t.value) + ".json";
}
std::string CtName(const std::string& name) { return "ct." + name + ".json"; }

void CheckVariant(const Globals& g, SchemeVariant actual) {
  if (g.variant_given && ParseVariant(g.variant) != actual) {
    Throw(ErrorCode::kVariantMismatch,
          std::string("ciphertext variant is ") + VariantName(actual));
  }
}

void PrintMatrix(const FailureReport& report, std::ostream& out) {
  const std::uint64_t periods = std::uint64_t{1} << report.ell;
  out << "t\\t'";
  for (std::uint64_t c = 0; c < periods; ++c) out << ' ' << std::setw(2) << c;
  out << '\n';
  auto cell = report.cells.begin();
  for (std::uint64_t r = 0; r < periods; ++r) {
    out << std::setw(4) << r;
    for (std::uint64_t c = 0; c < periods; ++c) {
      if (c < r) {
        out << "  .";
        continue;
      }
      out << "  " << (cell->outcome == Outcome::kMessageRecovered ? 'R' : 'x');
      ++cell;
    }
    out << '\n';
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Revocable-storage identity-based encryption toolkit", "rsibe"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--workspace", g.workspace, "Artifact directory")->capture_default_str();
  auto* backend_opt = app.add_option("--backend", g.backend, "Group backend")
                          ->check(CLI::IsMember({"mock", "curve"}))
                          ->capture_default_str();
  auto* variant_opt = app.add_option("--variant", g.variant, "Scheme variant")
                          ->check(CLI::IsMember({"wei", "naive", "corrected"}))
                          ->capture_default_str();
  app.add_option("--mode", g.mode, "Ciphertext delegation mode")
      ->check(CLI::IsMember({"verbatim", "bit-corrected"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Randomness seed, hex")->capture_default_str();
  app.add_flag("--trace", g.trace, "Embed sampled exponents in artifacts (mock only)");

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> fn) {
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
  };

  // setup
  unsigned setup_n = 3, setup_ell = 4;
  int lambda = 128;
  std::string policy = "first-free";
  auto* setup = app.add_subcommand("setup", "Create pp.json, mk.json and state.json");
  setup->add_option("--id-bits", setup_n, "Identity length n (2^n users)")->capture_default_str();
  setup->add_option("--time-bits", setup_ell, "Time length ell (2^ell periods)")
      ->capture_default_str();
  setup->add_option("--lambda", lambda, "Security parameter")->capture_default_str();
  setup->add_option("--leaf-policy", policy, "Leaf assignment order")
      ->check(CLI::IsMember({"first-free", "random"}))
      ->capture_default_str();
  on(setup, [&] {
    const Backend backend = ParseBackend(g.backend);
    if (setup_n == 0 || setup_n > kMaxTreeDepth || setup_ell == 0 || setup_ell > kMaxTreeDepth) {
      Throw(ErrorCode::kInvalidParameter, "tree depths must be in 1..32");
    }
    Randomness rng = CommandRng(g, backend, "setup");
    auto [mk, pp, st, rl] =
        Setup(lambda, std::uint64_t{1} << setup_n, std::uint64_t{1} << setup_ell,
              BackendConfig{backend, lambda, g.trace}, rng,
              policy == "random" ? LeafPolicy::kRandom : LeafPolicy::kFirstFree);
    Workspace ws(g);
    Json mk_json = ToJson(mk, pp);
    AttachTrace(mk_json, rng);
    ws.Write("pp.json", ToJson(pp));
    ws.Write("mk.json", mk_json);
    ws.Write(StateName(), StateToJson(st, rl, pp));
    out << "setup " << BackendName(backend) << " n=" << pp.n << " ell=" << pp.ell << '\n';
  });

  // keygen
  std::string id_text;
  auto* keygen = app.add_subcommand("keygen", "Issue sk.<id>.json");
  keygen->add_option("--id", id_text, "Identity bit string")->required();
  on(keygen, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const MasterKey mk = MasterKeyFromJson(ws.Read("mk.json"), pp);
    auto [st, rl] = StateFromJson(ws.Read(StateName()), pp);
    const Identity id = Identity::Parse(id_text);
    Randomness rng = CommandRng(g, pp.kind(), "keygen/" + id.ToString());
    const PrivateKey sk = GenKey(id, mk, st, pp, rng);
    Json j = ToJson(sk, pp);
    AttachTrace(j, rng);
    ws.Write(SkName(id), j);
    ws.Write(StateName(), StateToJson(st, rl, pp));
    out << "keygen " << id.ToString() << " leaf=" << sk.leaf << '\n';
  });

  // revoke
  std::uint64_t time_value = 0;
  auto* revoke = app.add_subcommand("revoke", "Revoke an identity from a period on");
  revoke->add_option("--id", id_text, "Identity bit string")->required();
  revoke->add_option("--t", time_value, "First revoked period")->required();
  on(revoke, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    auto [st, rl] = StateFromJson(ws.Read(StateName()), pp);
    const TimePeriod t{time_value};
    CheckTime(t, pp.ell);
    Revoke(Identity::Parse(id_text), t, rl, st);
    ws.Write(StateName(), StateToJson(st, rl, pp));
    out << "revoke " << id_text << " from " << t.value << '\n';
  });

  // update-key
  auto* update_key = app.add_subcommand("update-key", "Publish ku.<t>.json");
  update_key->add_option("--t", time_value, "Period")->required();
  on(update_key, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const MasterKey mk = MasterKeyFromJson(ws.Read("mk.json"), pp);
    auto [st, rl] = StateFromJson(ws.Read(StateName()), pp);
    const TimePeriod t{time_value};
    Randomness rng = CommandRng(g, pp.kind(), "update-key/" + std::to_string(t.value));
    const KeyUpdate ku = UpdateKey(t, rl, mk, st, pp, rng);
    Json j = ToJson(ku, pp);
    AttachTrace(j, rng);
    ws.Write(KuName(t), j);
    ws.Write(StateName(), StateToJson(st, rl, pp));
    out << "update-key t=" << t.value << " nodes=" << ku.entries.size() << '\n';
  });

  // derive-dk
  auto* derive = app.add_subcommand("derive-dk", "Combine sk and ku into dk.<id>.<t>.json");
  derive->add_option("--id", id_text, "Identity bit string")->required();
  derive->add_option("--t", time_value, "Period")->required();
  on(derive, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const Identity id = Identity::Parse(id_text);
    const TimePeriod t{time_value};
    const PrivateKey sk = PrivateKeyFromJson(ws.Read(SkName(id)), pp);
    const KeyUpdate ku = KeyUpdateFromJson(ws.Read(KuName(t)), pp);
    Randomness rng = CommandRng(g, pp.kind(),
                                "derive-dk/" + id.ToString() + "/" + std::to_string(t.value));
    const DecryptionKey dk = DeriveDk(sk, ku, pp, rng);
    Json j = ToJson(dk, pp);
    AttachTrace(j, rng);
    ws.Write(DkName(id, t), j);
    out << "derive-dk " << id.ToString() << " t=" << t.value << '\n';
  });

  // encrypt
  std::string ct_name;
  std::uint64_t message_seed = 0;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a seeded message to ct.<name>.json");
  encrypt->add_option("--id", id_text, "Recipient identity")->required();
  encrypt->add_option("--t", time_value, "Period")->required();
  encrypt->add_option("--message-seed", message_seed, "Seed of the GT message")
      ->capture_default_str();
  encrypt->add_option("--name", ct_name, "Ciphertext name")->required();
  on(encrypt, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const Identity id = Identity::Parse(id_text);
    const GroupElem m = MessageFromSeed(pp.kind(), message_seed);
    Randomness rng = CommandRng(g, pp.kind(), "encrypt/" + ct_name);
    const Ciphertext ct =
        Encrypt(id, TimePeriod{time_value}, m, pp, ParseVariant(g.variant), rng);
    Json j = ToJson(ct, pp);
    AttachTrace(j, rng);
    ws.Write(CtName(ct_name), j);
    out << "message " << MessageHandle(m) << '\n';
  });

  // update-ct
  std::string out_name;
  auto* update_ct = app.add_subcommand("update-ct", "Move a ciphertext to a later period");
  update_ct->add_option("--name", ct_name, "Ciphertext name")->required();
  update_ct->add_option("--t", time_value, "New period")->required();
  update_ct->add_option("--out", out_name, "Output name (default: overwrite)");
  on(update_ct, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const Ciphertext ct = CiphertextFromJson(ws.Read(CtName(ct_name)), pp);
    CheckVariant(g, ct.variant);
    const std::string target = out_name.empty() ? ct_name : out_name;
    Randomness rng = CommandRng(g, pp.kind(),
                                "update-ct/" + target + "/" + std::to_string(time_value));
    const Ciphertext moved =
        UpdateCt(ct, TimePeriod{time_value}, pp, rng, ParseMode(g.mode));
    Json j = ToJson(moved, pp);
    AttachTrace(j, rng);
    ws.Write(CtName(target), j);
    out << "update-ct " << target << " t=" << moved.t.value << '\n';
  });

  // decrypt
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt ct.<name>.json with dk.<id>.<t>.json");
  decrypt->add_option("--name", ct_name, "Ciphertext name")->required();
  decrypt->add_option("--t", time_value, "Period of the decryption key")->required();
  decrypt->add_option("--id", id_text, "Key identity (default: ciphertext identity)");
  on(decrypt, [&] {
    Workspace ws(g);
    const PublicParams pp = ws.LoadPp();
    const Ciphertext ct = CiphertextFromJson(ws.Read(CtName(ct_name)), pp);
    CheckVariant(g, ct.variant);
    const Identity id = id_text.empty() ? ct.id : Identity::Parse(id_text);
    const TimePeriod t{time_value};
    const DecryptionKey dk = DecryptionKeyFromJson(ws.Read(DkName(id, t)), pp);
    Randomness rng = CommandRng(g, pp.kind(), "decrypt/" + ct_name + "/" + std::to_string(t.value));
    const GroupElem m = Decrypt(ct, dk, pp, rng, ParseMode(g.mode));
    out << "message " << MessageHandle(m) << '\n';
  });

  // demo-failure
  unsigned demo_n = 3, demo_ell = 4;
  auto* demo_failure = app.add_subcommand("demo-failure", "Decrypt every (t, t') pair");
  demo_failure->add_option("--id-bits", demo_n, "Identity length")->capture_default_str();
  demo_failure->add_option("--time-bits", demo_ell, "Time length")->capture_default_str();
  on(demo_failure, [&] {
    const FailureReport report =
        ReproduceFailure(demo_n, demo_ell, ParseSeed(g.seed), ParseVariant(g.variant),
                         ParseMode(g.mode), ParseBackend(g.backend));
    Workspace(g).Write("report-failure.json", ToJson(report));
    PrintMatrix(report, out);
    out << "recovered " << report.recovered() << " wrong " << report.wrong() << '\n';
    const std::size_t checked = std::count_if(
        report.cells.begin(), report.cells.end(),
        [](const FailureCell& c) { return c.residual_ok.has_value(); });
    if (checked > 0) {
      out << "residual exact " << checked - report.residual_mismatches() << "/" << checked
          << '\n';
    }
    out << (report.MatchesExpectation() ? "matches expectation" : "UNEXPECTED matrix") << '\n';
  });

  // demo-attack
  unsigned attack_n = 3, attack_ell = 3;
  std::uint64_t ct_time = 3, target_time = 0;
  unsigned trials = 20;
  auto* demo_attack = app.add_subcommand("demo-attack", "Roll a ciphertext back in time");
  demo_attack->add_option("--id-bits", attack_n, "Identity length")->capture_default_str();
  demo_attack->add_option("--time-bits", attack_ell, "Time length")->capture_default_str();
  demo_attack->add_option("--ct-time", ct_time, "Ciphertext period")->capture_default_str();
  demo_attack->add_option("--target", target_time, "Forged period")->capture_default_str();
  demo_attack->add_option("--trials", trials, "Seeds per variant")->capture_default_str();
  on(demo_attack, [&] {
    const AttackReport report =
        DemonstrateRollback(attack_n, attack_ell, TimePeriod{ct_time}, TimePeriod{target_time},
                            ParseSeed(g.seed), trials, ParseBackend(g.backend));
    Workspace(g).Write("report-attack.json", ToJson(report));
    for (auto variant : {SchemeVariant::kNaiveSharedS, SchemeVariant::kWeiOriginal,
                         SchemeVariant::kCorrectedParallel}) {
      std::size_t built = 0, recovered = 0, total = 0;
      for (const auto& trial : report.trials) {
        if (trial.variant != variant) continue;
        ++total;
        built += trial.constructible;
        recovered += trial.recovered;
      }
      out << VariantName(variant) << ": forged " << built << "/" << total << ", recovered "
          << recovered << "/" << total << '\n';
    }
  });

  // census
  unsigned census_n = 3, census_ell = 3;
  auto* census = app.add_subcommand("census", "Count group elements per artifact");
  census->add_option("--id-bits", census_n, "Identity length")->capture_default_str();
  census->add_option("--time-bits", census_ell, "Time length")->capture_default_str();
  on(census, [&] {
    const SizeCensus c = CensusSizes(census_n, census_ell, ParseVariant(g.variant));
    Workspace(g).Write("report-census.json", ToJson(c));
    out << "private key: " << c.private_key_entries << " entries, "
        << c.private_key_elements << " elements\n";
    out << "key update (no revocations): " << c.key_update_entries << " entries, "
        << c.key_update_elements << " elements\n";
    out << "decryption key: " << c.decryption_key_elements << " elements\n";
    for (const auto& ct : c.ciphertexts) {
      out << "ciphertext t=" << ct.t.value << ": " << ct.nodes << " nodes, "
          << ct.source_elements << " source + " << ct.gt_elements << " GT\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  g.backend_given = backend_opt->count() > 0;
  g.variant_given = variant_opt->count() > 0;

  try {
    action();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRejected) {
      err << "rejected: key predates ciphertext\n";
    } else {
      err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << '\n';
    }
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rsibe::cli
