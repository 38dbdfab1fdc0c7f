// Command line front end: signature tables, difference quotients, normalized
// length sequences, Newton polytope volumes, self-similarity probes and
// property verification. Exit codes: 0 success, 1 failed property, 2 input
// error, 3 capacity exceeded, 4 unit pair element.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsig/fsig.hpp"

namespace {

constexpr std::uint64_t kDefaultBudget =
    fsig::TruncationParams::kDefaultBasisBudget;

std::string resolve_cache_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FSIG_CACHE")) return env;
  return {};
}

fsig::Rational parse_nonnegative_rational(const std::string& text,
                                          const char* what) {
  const fsig::Rational v = fsig::parse_rational(text);
  if (v < 0) {
    throw std::invalid_argument(std::string(what) + " must be nonnegative");
  }
  return v;
}

std::vector<fsig::ExponentVec> parse_monomial_list(const std::string& text,
                                                   unsigned n) {
  // Exponents only; parse over a large prime so no coefficient collapses.
  constexpr std::uint64_t kParsePrime = 2147483647;
  std::vector<fsig::ExponentVec> gens;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const fsig::SparsePoly g = fsig::parse_poly(item, n, kParsePrime);
    if (g.term_count() != 1 || g.terms().begin()->second != 1) {
      throw std::invalid_argument("ideal generator is not a monomial: '" +
                                  item + "'");
    }
    gens.push_back(g.terms().begin()->first);
  }
  if (gens.empty()) {
    throw std::invalid_argument("ideal needs at least one generator");
  }
  return gens;
}

void write_value_row(std::ostream& os, const std::string& format,
                     const fsig::Rational& t, const fsig::Rational& v) {
  if (format == "json") {
    nlohmann::json row;
    row["t_num"] = fsig::numerator(t).str();
    row["t_den"] = fsig::denominator(t).str();
    row["v_num"] = fsig::numerator(v).str();
    row["v_den"] = fsig::denominator(v).str();
    row["v_dec"] = fsig::decimal_string(v);
    os << row.dump(2) << "\n";
    return;
  }
  os << "t_num,t_den,v_num,v_den,v_dec\n"
     << fsig::numerator(t).str() << "," << fsig::denominator(t).str() << ","
     << fsig::numerator(v).str() << "," << fsig::denominator(v).str() << ","
     << fsig::decimal_string(v) << "\n";
}

void print_report(const fsig::PropertyReport& report) {
  std::cout << report.property << ": " << (report.pass ? "PASS" : "FAIL")
            << "\n";
  for (const fsig::Witness& w : report.witnesses) {
    std::cout << "  at " << w.location << ": expected " << w.expected
              << ", got " << w.actual << "\n";
  }
}

struct RingOpts {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::string f;
  std::uint64_t budget = kDefaultBudget;
};

void add_ring_options(CLI::App* cmd, RingOpts& ring) {
  cmd->add_option("--p", ring.p, "prime characteristic")->required();
  cmd->add_option("--n", ring.n, "number of variables (1..8)")->required();
  cmd->add_option("--f", ring.f, "pair element in F_p[x_1..x_n]")->required();
  cmd->add_option("--budget", ring.budget,
                  "largest allowed quotient basis size p^(c n)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact F-signature of hypersurface pairs (R, f^t) over prime fields"};
  app.require_subcommand(1);

  // --- signature / derivative ---------------------------------------------
  struct TableCmdOpts {
    RingOpts ring;
    std::uint32_t c = 1;
    std::string tmax = "1";
    std::string format = "csv";
    std::string cache;
    unsigned jobs = 1;
  };
  TableCmdOpts sig, der;
  for (auto [cmd_name, opts, help] :
       {std::tuple<const char*, TableCmdOpts*, const char*>{
            "signature", &sig,
            "Exact table of s(a/p^c) for a = 0..tmax*p^c"},
        std::tuple<const char*, TableCmdOpts*, const char*>{
            "derivative", &der,
            "Forward difference quotients of the signature table"}}) {
    CLI::App* cmd = app.add_subcommand(cmd_name, help);
    add_ring_options(cmd, opts->ring);
    cmd->add_option("--c", opts->c, "grid scale: t ranges over a/p^c")
        ->required();
    cmd->add_option("--tmax", opts->tmax, "upper end of the sweep (rational)");
    cmd->add_option("--format", opts->format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--cache", opts->cache,
                    "JSONL length cache (default: $FSIG_CACHE if set)");
    cmd->add_option("--jobs", opts->jobs, "worker threads for the sweep");
  }

  // --- hk / qsig ------------------------------------------------------------
  struct SeqCmdOpts {
    RingOpts ring;
    unsigned emax = 1;
    std::string format = "csv";
  };
  SeqCmdOpts hk, qsig;
  for (auto [cmd_name, opts, help] :
       {std::tuple<const char*, SeqCmdOpts*, const char*>{
            "hk", &hk,
            "Normalized colengths of (m^[p^e], f): Hilbert-Kunz sequence"},
        std::tuple<const char*, SeqCmdOpts*, const char*>{
            "qsig", &qsig,
            "Normalized colon lengths at a = p^e - 1: signature sequence of "
            "R/(f)"}}) {
    CLI::App* cmd = app.add_subcommand(cmd_name, help);
    add_ring_options(cmd, opts->ring);
    cmd->add_option("--emax", opts->emax, "compute e = 1..emax")->required();
    cmd->add_option("--format", opts->format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  // --- volume ----------------------------------------------------------------
  struct VolumeOpts {
    unsigned n = 0;
    std::string ideal;
    std::string t = "1";
    std::uint64_t mc = 0;
    std::uint64_t seed = 12345;
    std::string format = "csv";
  } vol;
  {
    CLI::App* cmd = app.add_subcommand(
        "volume", "Volume of t*P inside the unit cube for the Newton "
                  "polyhedron P of a monomial ideal");
    cmd->add_option("--n", vol.n, "number of variables")->required();
    cmd->add_option("--ideal", vol.ideal,
                    "comma separated monomial generators, e.g. 'x^2,y^3'")
        ->required();
    cmd->add_option("--t", vol.t, "scaling parameter (rational)");
    cmd->add_option("--mc", vol.mc,
                    "Monte Carlo sample count (0 = exact computation)");
    cmd->add_option("--seed", vol.seed, "Monte Carlo seed");
    cmd->add_option("--format", vol.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  // --- fractal ----------------------------------------------------------------
  CLI::App* fractal_cmd = app.add_subcommand(
      "fractal", "Self-similar structure: Monsky delta, closed form, probes");
  fractal_cmd->require_subcommand(1);
  struct DeltaOpts {
    std::string t;
    std::string format = "csv";
  } delta_opts, cf_opts;
  {
    CLI::App* cmd = fractal_cmd->add_subcommand(
        "delta", "Evaluate Monsky's delta function at a rational t in [0,1]");
    cmd->add_option("--t", delta_opts.t, "argument (rational)")->required();
    cmd->add_option("--format", delta_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    CLI::App* cmd2 = fractal_cmd->add_subcommand(
        "closed-form",
        "Signature of the Monsky quartic y^3 - x^4 + x^2 y^2 over F_3");
    cmd2->add_option("--t", cf_opts.t, "argument (rational)")->required();
    cmd2->add_option("--format", cf_opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  struct FractalTableOpts {
    std::uint32_t c = 1;
    std::string format = "csv";
  } ftab;
  {
    CLI::App* cmd = fractal_cmd->add_subcommand(
        "table", "Delta and closed-form signature on the grid a/3^c");
    cmd->add_option("--c", ftab.c, "triadic scale")->required();
    cmd->add_option("--format", ftab.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  struct ProbeOpts {
    RingOpts ring;
    std::uint32_t window = 1;
    std::uint32_t sample = 2;
    unsigned jobs = 1;
    std::string cache;
  } probe;
  {
    CLI::App* cmd = fractal_cmd->add_subcommand(
        "probe", "Rank of the rescaled-window sample matrix of phi = 1 - s");
    add_ring_options(cmd, probe.ring);
    cmd->add_option("--window-scale", probe.window,
                    "deepest rescaling level e")
        ->required();
    cmd->add_option("--sample-scale", probe.sample,
                    "grid scale used for sampling")
        ->required();
    cmd->add_option("--jobs", probe.jobs, "worker threads for the sweep");
    cmd->add_option("--cache", probe.cache,
                    "JSONL length cache (default: $FSIG_CACHE if set)");
  }

  // --- verify -----------------------------------------------------------------
  struct VerifyOpts {
    RingOpts ring;
    std::uint32_t c = 1;
    std::string tmax = "1";
    std::uint32_t adjunction_scale = 0;  // 0: use c
    unsigned jobs = 1;
    std::string cache;
  } ver;
  {
    CLI::App* cmd = app.add_subcommand(
        "verify",
        "Check monotonicity, convexity and slope identities of the table");
    add_ring_options(cmd, ver.ring);
    cmd->add_option("--c", ver.c, "grid scale")->required();
    cmd->add_option("--tmax", ver.tmax, "upper end of the sweep (rational)");
    cmd->add_option("--adjunction-scale", ver.adjunction_scale,
                    "scale for the boundary slope identity (default: c)");
    cmd->add_option("--jobs", ver.jobs, "worker threads");
    cmd->add_option("--cache", ver.cache,
                    "JSONL length cache (default: $FSIG_CACHE if set)");
  }

  bool verify_failed = false;

  auto run_table_cmd = [&](const TableCmdOpts& o, bool slopes) {
    const fsig::SparsePoly f = fsig::parse_poly(o.ring.f, o.ring.n, o.ring.p);
    fsig::TableOptions topts;
    topts.jobs = o.jobs;
    topts.basis_budget = o.ring.budget;
    std::optional<fsig::LengthCache> cache;
    const std::string path = resolve_cache_path(o.cache);
    if (!path.empty()) {
      cache.emplace(path);
      topts.provider = cache->provider();
    }
    const fsig::Rational tmax = parse_nonnegative_rational(o.tmax, "tmax");
    const fsig::SignatureTable table =
        fsig::signature_table(f, o.ring.p, o.c, tmax, topts);
    if (slopes) {
      const auto d = fsig::derivative_table(table);
      if (o.format == "json") {
        fsig::write_slopes_json(std::cout, d);
      } else {
        fsig::write_slopes_csv(std::cout, d);
      }
    } else {
      if (o.format == "json") {
        fsig::write_signature_json(std::cout, table);
      } else {
        fsig::write_signature_csv(std::cout, table);
      }
    }
  };

  app.get_subcommand("signature")->callback([&] { run_table_cmd(sig, false); });
  app.get_subcommand("derivative")->callback([&] { run_table_cmd(der, true); });

  auto run_seq_cmd = [&](const SeqCmdOpts& o, bool quotient_signature) {
    const fsig::SparsePoly f = fsig::parse_poly(o.ring.f, o.ring.n, o.ring.p);
    const std::vector<fsig::Rational> seq =
        quotient_signature
            ? fsig::quotient_signature_sequence(f, o.emax, o.ring.budget)
            : fsig::hk_sequence(f, o.emax, o.ring.budget);
    if (o.format == "json") {
      fsig::write_sequence_json(std::cout, seq);
    } else {
      fsig::write_sequence_csv(std::cout, seq);
    }
  };
  app.get_subcommand("hk")->callback([&] { run_seq_cmd(hk, false); });
  app.get_subcommand("qsig")->callback([&] { run_seq_cmd(qsig, true); });

  app.get_subcommand("volume")->callback([&] {
    const auto gens = parse_monomial_list(vol.ideal, vol.n);
    const fsig::MonomialIdeal ideal(vol.n, gens);
    const fsig::HPolytope poly = fsig::newton_facets(ideal);
    const fsig::Rational t = parse_nonnegative_rational(vol.t, "t");
    if (vol.mc == 0) {
      write_value_row(std::cout, vol.format, t,
                      fsig::clipped_volume_exact(poly, t));
      return;
    }
    const fsig::McResult r = fsig::clipped_volume_mc(poly, t, vol.mc, vol.seed);
    if (vol.format == "json") {
      nlohmann::json row;
      row["t_num"] = fsig::numerator(t).str();
      row["t_den"] = fsig::denominator(t).str();
      row["estimate_num"] = fsig::numerator(r.estimate).str();
      row["estimate_den"] = fsig::denominator(r.estimate).str();
      row["estimate_dec"] = fsig::decimal_string(r.estimate);
      row["bound_num"] = fsig::numerator(r.error_bound).str();
      row["bound_den"] = fsig::denominator(r.error_bound).str();
      row["hits"] = r.hits;
      row["samples"] = r.samples;
      std::cout << row.dump(2) << "\n";
    } else {
      std::cout << "t_num,t_den,estimate_num,estimate_den,estimate_dec,"
                   "bound_num,bound_den,hits,samples\n"
                << fsig::numerator(t).str() << ","
                << fsig::denominator(t).str() << ","
                << fsig::numerator(r.estimate).str() << ","
                << fsig::denominator(r.estimate).str() << ","
                << fsig::decimal_string(r.estimate) << ","
                << fsig::numerator(r.error_bound).str() << ","
                << fsig::denominator(r.error_bound).str() << "," << r.hits
                << "," << r.samples << "\n";
    }
  });

  fractal_cmd->get_subcommand("delta")->callback([&] {
    const fsig::Rational t = parse_nonnegative_rational(delta_opts.t, "t");
    write_value_row(std::cout, delta_opts.format, t, fsig::delta_eval(t));
  });
  fractal_cmd->get_subcommand("closed-form")->callback([&] {
    const fsig::Rational t = parse_nonnegative_rational(cf_opts.t, "t");
    write_value_row(std::cout, cf_opts.format, t,
                    fsig::monsky_closed_form(t));
  });
  fractal_cmd->get_subcommand("table")->callback([&] {
    const fsig::BigInt den = fsig::big_pow(fsig::BigInt(3), ftab.c);
    if (den > fsig::BigInt(1'000'000)) {
      throw fsig::capacity_error("triadic grid too fine");
    }
    const std::uint64_t count = static_cast<std::uint64_t>(den);
    if (ftab.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (std::uint64_t a = 0; a <= count; ++a) {
        const fsig::Rational t(fsig::BigInt(a), den);
        const fsig::Rational d = fsig::delta_eval(t);
        const fsig::Rational s = fsig::monsky_closed_form(t);
        nlohmann::json row;
        row["a"] = a;
        row["t_num"] = fsig::numerator(t).str();
        row["t_den"] = fsig::denominator(t).str();
        row["delta_num"] = fsig::numerator(d).str();
        row["delta_den"] = fsig::denominator(d).str();
        row["delta_dec"] = fsig::decimal_string(d);
        row["s_num"] = fsig::numerator(s).str();
        row["s_den"] = fsig::denominator(s).str();
        row["s_dec"] = fsig::decimal_string(s);
        arr.push_back(std::move(row));
      }
      std::cout << arr.dump(2) << "\n";
    } else {
      std::cout << "a,t_num,t_den,delta_num,delta_den,delta_dec,s_num,s_den,"
                   "s_dec\n";
      for (std::uint64_t a = 0; a <= count; ++a) {
        const fsig::Rational t(fsig::BigInt(a), den);
        const fsig::Rational d = fsig::delta_eval(t);
        const fsig::Rational s = fsig::monsky_closed_form(t);
        std::cout << a << "," << fsig::numerator(t).str() << ","
                  << fsig::denominator(t).str() << ","
                  << fsig::numerator(d).str() << ","
                  << fsig::denominator(d).str() << ","
                  << fsig::decimal_string(d) << "," << fsig::numerator(s).str()
                  << "," << fsig::denominator(s).str() << ","
                  << fsig::decimal_string(s) << "\n";
      }
    }
  });
  fractal_cmd->get_subcommand("probe")->callback([&] {
    const fsig::SparsePoly f =
        fsig::parse_poly(probe.ring.f, probe.ring.n, probe.ring.p);
    fsig::TableOptions topts;
    topts.jobs = probe.jobs;
    topts.basis_budget = probe.ring.budget;
    std::optional<fsig::LengthCache> cache;
    const std::string path = resolve_cache_path(probe.cache);
    if (!path.empty()) {
      cache.emplace(path);
      topts.provider = cache->provider();
    }
    const std::size_t rank =
        fsig::fractal_dim_probe(f, probe.window, probe.sample, topts);
    std::cout << "window_scale,sample_scale,rank\n"
              << probe.window << "," << probe.sample << "," << rank << "\n";
  });

  app.get_subcommand("verify")->callback([&] {
    const fsig::SparsePoly f =
        fsig::parse_poly(ver.ring.f, ver.ring.n, ver.ring.p);
    fsig::TableOptions topts;
    topts.jobs = ver.jobs;
    topts.basis_budget = ver.ring.budget;
    std::optional<fsig::LengthCache> cache;
    const std::string path = resolve_cache_path(ver.cache);
    if (!path.empty()) {
      cache.emplace(path);
      topts.provider = cache->provider();
    }
    const fsig::Rational tmax = parse_nonnegative_rational(ver.tmax, "tmax");
    const fsig::SignatureTable table =
        fsig::signature_table(f, ver.ring.p, ver.c, tmax, topts);

    std::vector<fsig::PropertyReport> reports;
    reports.push_back(fsig::check_monotone(table));
    if (table.samples().size() >= 3) {
      reports.push_back(fsig::check_convex(table));
    }
    if (table.samples().size() >= 2) {
      const fsig::Rational hk_bound =
          fsig::hk_sequence(f, ver.c, ver.ring.budget).back();
      reports.push_back(fsig::check_sharp_slope(table, hk_bound));
    }
    const std::uint32_t ad_scale =
        ver.adjunction_scale == 0 ? ver.c : ver.adjunction_scale;
    reports.push_back(fsig::check_adjunction_slopes(f, ad_scale, topts));

    for (const auto& r : reports) {
      print_report(r);
      if (!r.pass) verify_failed = true;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fsig::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fsig::unit_element_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fsig::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return verify_failed ? 1 : 0;
}
