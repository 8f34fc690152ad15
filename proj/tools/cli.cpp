#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "conecalc/cache.hpp"
#include "conecalc/combinatorics.hpp"
#include "conecalc/cone.hpp"
#include "conecalc/error.hpp"
#include "conecalc/lemmas.hpp"
#include "conecalc/norm.hpp"
#include "conecalc/parse.hpp"
#include "conecalc/real_word.hpp"
#include "conecalc/stable.hpp"

namespace conecalc::cli {

  namespace {
    using Json  = nlohmann::ordered_json;
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point start) {
      return std::chrono::duration<double>(Clock::now() - start).count();
    }

    void put_rational(Json& j, std::string const& prefix, Rational const& r) {
      j[prefix]               = to_fraction_string(r);
      j[prefix + "_decimal"]  = to_decimal_string(r);
    }

    std::string alphabet_string(WeightedAlphabet const& a) {
      std::string s;
      for (std::size_t i = 0; i < a.size(); ++i) {
        s += (i ? "," : "") + a.name(i) + "=" + to_compact_string(a.weight(i));
      }
      return s;
    }

    std::vector<Rational> parse_rationals(std::vector<std::string> const& items) {
      std::vector<Rational> out;
      for (auto const& s : items) {
        out.push_back(parse_rational(s));
      }
      return out;
    }

    struct Settings {
      std::string              alphabet_spec = "a=1,b=1";
      std::string              alphabet_file;
      bool                     no_cache = false;
      std::size_t              max_len  = NormOptions{}.max_len;
      int                      jobs     = 0;
      std::vector<std::string> inputs;

      bool                      witness = false;
      bool                      factor  = false;
      std::vector<std::int64_t> schedule;
      std::vector<std::string>  grid;
      std::vector<std::string>  at = {"0", "1/4", "1/2", "3/4", "1"};

      std::vector<std::size_t> p1, p2;
      std::size_t              ell = 1;

      double                   trials_scale = 1.0;
      std::uint64_t            seed         = LemmaOptions{}.seed;
      std::vector<std::string> suites;

      std::size_t bench_len  = 600;
      int         bench_reps = 1;
    };

    class Session {
     public:
      Session(Settings const& s, std::istream& in, std::ostream& out, std::ostream& err)
          : s_(s), in_(in), out_(out), err_(err) {
        options_.max_len = s.max_len;
        if (!s.alphabet_file.empty()) {
          std::ifstream file(s.alphabet_file);
          if (!file) {
            throw PreconditionViolated("cannot read alphabet file '" + s.alphabet_file + "'");
          }
          std::stringstream buf;
          buf << file.rdbuf();
          alphabet_ = parse_alphabet_file(buf.str());
        } else {
          alphabet_ = parse_alphabet_spec(s.alphabet_spec);
        }
        if (s.no_cache) {
          cache_ = std::make_unique<NormCache>();
        } else {
          cache_ = std::make_unique<NormCache>(NormCache::default_directory(), &err);
        }
      }

      ~Session() {
        if (cache_->enabled() && cache_->hits() + cache_->misses() > 0) {
          err_ << "conecalc: cache hits=" << cache_->hits()
               << " misses=" << cache_->misses() << "\n";
        }
      }

      // Calls `each(text)` for every input, rebasing parse error lines onto
      // the stdin line number.
      void for_inputs(std::function<void(std::string const&)> const& each) {
        if (!s_.inputs.empty()) {
          for (auto const& text : s_.inputs) {
            each(text);
          }
          return;
        }
        std::string line;
        std::size_t number = 0;
        while (std::getline(in_, line)) {
          ++number;
          auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') {
            continue;
          }
          try {
            each(line);
          } catch (ParseError const& e) {
            throw ParseError(e.message(), number, e.column());
          }
        }
      }

      void emit(Json const& record) {
        out_ << record.dump() << "\n";
        out_.flush();
      }

      Rational cached_norm(WeightedAlphabet const& a, Word const& w) {
        return cache_->get_or_compute(
            a, w, [&] { return cancellation_norm(w, a, options_).value; });
      }

      NormFunction norm_function(WeightedAlphabet const& a) {
        return [this, a](Word const& w) { return cached_norm(a, w); };
      }

      void norm() {
        for_inputs([&](std::string const& text) {
          auto const start = Clock::now();
          Word const w     = parse_word(text, alphabet_);
          Json       r{{"command", "norm"},
                       {"input", text},
                       {"alphabet", alphabet_string(alphabet_)},
                       {"reduced", to_string(reduce(w), alphabet_)}};
          if (s_.witness || s_.factor) {
            auto cert = cancellation_norm(w, alphabet_, options_);
            put_rational(r, "value", cert.value);
            if (s_.witness) {
              Json pairs = Json::array();
              for (auto [i, j] : cert.cancelled) {
                pairs.push_back({i, j});
              }
              r["witness"] = {{"removed", cert.removed}, {"cancelled", pairs}};
            }
            if (s_.factor) {
              Json factors = Json::array();
              for (auto const& f : factor_into_conjugates(cert, w, alphabet_)) {
                factors.push_back({{"conjugator", to_string(f.conjugator, alphabet_)},
                                   {"letter", to_string(Word{f.letter}, alphabet_)}});
              }
              r["factors"] = factors;
            }
          } else {
            put_rational(r, "value", cached_norm(alphabet_, w));
          }
          r["seconds"] = seconds_since(start);
          emit(r);
        });
      }

      void rnorm() {
        for_inputs([&](std::string const& text) {
          auto const     start = Clock::now();
          RealWord const w     = parse_real_word(text, alphabet_);
          auto const     cert  = rational_norm_exact(w, alphabet_, options_);
          Json           r{{"command", "rnorm"},
                           {"input", text},
                           {"alphabet", alphabet_string(alphabet_)},
                           {"normalized", to_string(normalize(w), alphabet_)}};
          put_rational(r, "value", cert.value);
          r["scale"] = cert.scale.str();
          if (s_.witness) {
            Json amounts = Json::array();
            for (auto const& s : cert.witness.amounts) {
              amounts.push_back(to_fraction_string(s));
            }
            r["witness"] = amounts;
          }
          r["seconds"] = seconds_since(start);
          emit(r);
        });
      }

      void stable() {
        for_inputs([&](std::string const& text) {
          auto const start    = Clock::now();
          Word const g        = parse_word(text, alphabet_);
          auto const schedule = s_.schedule.empty()
                                    ? default_power_schedule(g, options_.max_len)
                                    : s_.schedule;
          auto const est = stable_length_bounds(g, alphabet_, schedule, options_,
                                                norm_function(alphabet_));
          Json seq = Json::array();
          for (auto const& [n, ratio] : est.upper_sequence) {
            Json item{{"n", n}};
            put_rational(item, "value", ratio);
            seq.push_back(item);
          }
          Json r{{"command", "stable"},
                 {"input", text},
                 {"alphabet", alphabet_string(alphabet_)},
                 {"core", to_string(cyclically_reduce(reduce(g)).core, alphabet_)},
                 {"sequence", seq}};
          put_rational(r, "upper", est.upper);
          put_rational(r, "lower", est.lower);
          r["lower_method"] = est.method;
          r["seconds"]      = seconds_since(start);
          emit(r);
        });
      }

      void root() {
        for_inputs([&](std::string const& text) {
          auto const start = Clock::now();
          Word const w     = parse_word(text, alphabet_);
          auto const pr    = primitive_root(w);
          emit(Json{{"command", "root"},
                    {"input", text},
                    {"alphabet", alphabet_string(alphabet_)},
                    {"theta", to_string(pr.theta.theta(), alphabet_)},
                    {"k", pr.k},
                    {"conjugator", to_string(pr.conjugator, alphabet_)},
                    {"seconds", seconds_since(start)}});
        });
      }

      static Json samples_json(std::vector<LimitSample> const& samples) {
        Json out = Json::array();
        for (auto const& s : samples) {
          Json item{{"t", to_fraction_string(s.t)}};
          put_rational(item, "value", s.value);
          out.push_back(item);
        }
        return out;
      }

      // An explicit grid is used as given.  The default grid drops the points
      // whose curve word reduces to more than --max-len letters.
      std::vector<Rational> grid_for(ConeElementDesc const& desc) const {
        if (!s_.grid.empty()) {
          return parse_rationals(s_.grid);
        }
        auto grid = default_cone_grid(desc);
        if (desc.kind() != BaseKind::free_group) {
          return grid;
        }
        std::vector<Rational> kept;
        for (auto const& t : grid) {
          if (reduce(curve_word(desc, t)).size() <= options_.max_len) {
            kept.push_back(t);
          }
        }
        if (kept.empty()) {
          throw BudgetExceeded("no default grid point fits --max-len "
                               + std::to_string(options_.max_len));
        }
        return kept;
      }

      void cone_curve() {
        for_inputs([&](std::string const& text) {
          auto const start   = Clock::now();
          auto const desc    = parse_cone_description(text);
          auto const grid    = grid_for(desc);
          auto const samples = cone_curve_sample(desc, grid, options_);
          emit(Json{{"command", "cone-curve"},
                    {"input", text},
                    {"description", to_string(desc)},
                    {"samples", samples_json(samples)},
                    {"seconds", seconds_since(start)}});
        });
      }

      void cone_bracket() {
        for_inputs([&](std::string const& text) {
          auto const start = Clock::now();
          auto       desc  = parse_cone_description(text);
          Json       r{{"command", "cone-bracket"}, {"input", text}};
          TauBrackets tau;
          if (desc.kind() == BaseKind::free_group) {
            desc = cone_canonicalize(desc);
            tau  = tau_brackets_for(desc, options_, norm_function(desc.alphabet()));
            Json taus = Json::array();
            for (auto const& [theta, b] : tau) {
              Json item{{"theta", to_string(theta, desc.alphabet())}};
              put_rational(item, "lower", b.lower);
              put_rational(item, "upper", b.upper);
              taus.push_back(item);
            }
            r["tau"] = taus;
          }
          r["canonical"]     = to_string(desc);
          auto const grid    = desc.kind() == BaseKind::heisenberg ? std::vector<Rational>{}
                                                                  : grid_for(desc);
          auto const bracket = cone_norm_bracket(desc, grid, tau, options_);
          put_rational(r, "lower", bracket.lower);
          put_rational(r, "upper", bracket.upper);
          r["lower_method"] = bracket.lower_method;
          r["samples"]      = samples_json(bracket.samples);
          if (!bracket.samples.empty()) {
            put_rational(r, "sample_max", bracket.sample_max);
          }
          r["seconds"] = seconds_since(start);
          emit(r);
        });
      }

      void geodesic() {
        auto const ts = parse_rationals(s_.at);
        for_inputs([&](std::string const& text) {
          auto const     start = Clock::now();
          RealWord const w     = parse_real_word(text, alphabet_);
          auto const     cert  = rational_norm_exact(w, alphabet_, options_);
          auto const     path  = geodesic_sample(w, cert.witness, ts);
          Json           points = Json::array();
          for (std::size_t i = 0; i < ts.size(); ++i) {
            Json item{{"t", to_fraction_string(ts[i])},
                      {"point", to_string(path[i], alphabet_)}};
            put_rational(item, "distance", ts[i] * cert.value);
            points.push_back(item);
          }
          Json amounts = Json::array();
          for (auto const& s : cert.witness.amounts) {
            amounts.push_back(to_fraction_string(s));
          }
          Json r{{"command", "geodesic"},
                 {"input", text},
                 {"alphabet", alphabet_string(alphabet_)}};
          put_rational(r, "value", cert.value);
          r["witness"] = amounts;
          r["points"]  = points;
          r["seconds"] = seconds_since(start);
          emit(r);
        });
      }

      void collide() {
        auto const start = Clock::now();
        auto const p1    = IntervalPartition::from_sizes(s_.p1);
        auto const p2    = IntervalPartition::from_sizes(s_.p2);
        auto const c     = find_interval_collision(p1, p2, s_.ell);
        auto       range = [](Interval iv) { return Json::array({iv.first, iv.last}); };
        emit(Json{{"command", "collide"},
                  {"n", p1.universe()},
                  {"ell", s_.ell},
                  {"i", c.i + 1},
                  {"j", c.j + 1},
                  {"first", range(p1.interval(c.i))},
                  {"second", range(p2.interval(c.j))},
                  {"common", range(c.common)},
                  {"seconds", seconds_since(start)}});
      }

      int check_lemmas() {
        LemmaOptions opts;
        opts.seed  = s_.seed;
        opts.scale = s_.trials_scale;
        auto names = s_.suites.empty() ? lemma_suite_names() : s_.suites;
        bool ok    = true;
        for (auto const& name : names) {
          auto const check = run_lemma_suite(name, opts);
          ok               = ok && check.passed();
          Json r{{"command", "check-lemmas"},
                 {"suite", check.name},
                 {"trials", check.trials},
                 {"failures", check.failures},
                 {"passed", check.passed()}};
          if (!check.counterexample.empty()) {
            r["counterexample"] = check.counterexample;
          }
          r["seconds"] = check.seconds;
          emit(r);
          if (!check.passed()) {
            err_ << "conecalc: suite " << check.name << " failed: " << check.counterexample
                 << "\n";
          }
        }
        return ok ? exit_ok : exit_internal;
      }

      void bench() {
        std::mt19937_64 rng(s_.seed);
        Word            w;
        while (w.size() < s_.bench_len) {
          Letter l(static_cast<std::uint32_t>(rng() % alphabet_.size()), rng() % 2 == 0);
          if (w.empty() || w.back() != l.inverse()) {
            w.push_back(l);
          }
        }
        NormOptions opts = options_;
        opts.max_len     = std::max(opts.max_len, w.size());
        auto time_kernel = [&](Kernel k, int threads, Rational& value) {
          int const saved = omp_get_max_threads();
          omp_set_num_threads(threads);
          opts.kernel = k;
          double best = 0;
          for (int rep = 0; rep < std::max(1, s_.bench_reps); ++rep) {
            auto const start = Clock::now();
            value            = cancellation_norm(w, alphabet_, opts).value;
            double const sec = seconds_since(start);
            best             = rep == 0 ? sec : std::min(best, sec);
          }
          omp_set_num_threads(saved);
          return best;
        };
        int const threads = omp_get_max_threads();
        Rational  serial_value, parallel_value;
        double const serial   = time_kernel(Kernel::serial, 1, serial_value);
        double const parallel = time_kernel(Kernel::parallel, threads, parallel_value);
        Json r{{"command", "bench"},
               {"length", w.size()},
               {"alphabet", alphabet_string(alphabet_)},
               {"seed", s_.seed},
               {"threads", threads}};
        put_rational(r, "value", serial_value);
        r["agree"]            = serial_value == parallel_value;
        r["serial_seconds"]   = serial;
        r["parallel_seconds"] = parallel;
        emit(r);
        if (serial_value != parallel_value) {
          throw std::logic_error("serial and parallel kernels disagree");
        }
      }

     private:
      Settings const&            s_;
      std::istream&              in_;
      std::ostream&              out_;
      std::ostream&              err_;
      WeightedAlphabet           alphabet_;
      NormOptions                options_;
      std::unique_ptr<NormCache> cache_;
    };
  }  // namespace

  int run(int argc, char const* const* argv, std::istream& in, std::ostream& out,
          std::ostream& err) {
    Settings s;
    CLI::App app{"Conjugation-invariant word norms and directional cone approximations",
                 "conecalc"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--alphabet", s.alphabet_spec, "Weighted generators, e.g. a=1,b=3/2");
    app.add_option("--alphabet-file", s.alphabet_file, "File with one 'name weight' per line");
    app.add_flag("--no-cache", s.no_cache, "Do not read or write the norm cache");
    app.add_option("--max-len", s.max_len, "Longest reduced word fed to the norm DP")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", s.jobs, "Worker threads (default: OpenMP default)")
        ->check(CLI::PositiveNumber);

    auto add_inputs = [&](CLI::App* sub, char const* what) {
      sub->add_option("inputs", s.inputs, what);
    };

    auto* norm = app.add_subcommand("norm", "Cancellation norm of a word");
    add_inputs(norm, "Words; read from stdin when absent");
    norm->add_flag("--witness", s.witness, "Print the removed letters and cancelled pairs");
    norm->add_flag("--factor", s.factor, "Print the word as a product of conjugates");

    auto* rnorm = app.add_subcommand("rnorm", "Exact norm of a rational word");
    add_inputs(rnorm, "Rational words such as 'a(1/2) b(-3)'");
    rnorm->add_flag("--witness", s.witness, "Print the cancellation amounts");

    auto* stable = app.add_subcommand("stable", "Stable length bracket");
    add_inputs(stable, "Words");
    stable->add_option("--schedule", s.schedule, "Powers n, e.g. 1,2,4,8")->delimiter(',');

    auto* root = app.add_subcommand("root", "Primitive root and canonical representative");
    add_inputs(root, "Words");

    auto* curve = app.add_subcommand("cone-curve", "Samples of (1/t)|g(t)| for a cone element");
    add_inputs(curve, "Cone descriptions");
    curve->add_option("--grid", s.grid, "Values of t, e.g. 2,4,8")->delimiter(',');

    auto* bracket = app.add_subcommand("cone-bracket", "Certified bracket for a cone norm");
    add_inputs(bracket, "Cone descriptions");
    bracket->add_option("--grid", s.grid, "Values of t for the diagnostic samples")
        ->delimiter(',');

    auto* geo = app.add_subcommand("geodesic", "Points on the cancellation geodesic");
    add_inputs(geo, "Rational words");
    geo->add_option("--at", s.at, "Parameters in [0,1]")->delimiter(',');

    auto* collide = app.add_subcommand("collide", "First long common interval of two partitions");
    collide->add_option("--p1", s.p1, "Interval sizes of the first partition")
        ->delimiter(',')
        ->required();
    collide->add_option("--p2", s.p2, "Interval sizes of the second partition")
        ->delimiter(',')
        ->required();
    collide->add_option("--ell", s.ell, "Required overlap")->check(CLI::PositiveNumber);

    auto* lemmas = app.add_subcommand("check-lemmas", "Run the randomized property suites");
    lemmas->add_option("--trials-scale", s.trials_scale, "Multiplier for trial counts")
        ->check(CLI::PositiveNumber);
    lemmas->add_option("--seed", s.seed, "Base seed");
    lemmas->add_option("--suite", s.suites, "Run only these suites");

    auto* bench = app.add_subcommand("bench", "Time the serial and parallel norm kernels");
    bench->add_option("--len", s.bench_len, "Reduced word length")->check(CLI::PositiveNumber);
    bench->add_option("--reps", s.bench_reps, "Repetitions; the best time is kept")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", s.seed, "Seed for the random word");

    try {
      app.parse(argc, argv);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    } catch (CLI::CallForVersion const&) {
      out << tool_version << "\n";
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "conecalc: " << e.what() << "\n";
      return exit_precondition;
    }

    try {
      if (s.jobs > 0) {
        omp_set_num_threads(s.jobs);
      }
      Session session(s, in, out, err);
      if (norm->parsed()) {
        session.norm();
      } else if (rnorm->parsed()) {
        session.rnorm();
      } else if (stable->parsed()) {
        session.stable();
      } else if (root->parsed()) {
        session.root();
      } else if (curve->parsed()) {
        session.cone_curve();
      } else if (bracket->parsed()) {
        session.cone_bracket();
      } else if (geo->parsed()) {
        session.geodesic();
      } else if (collide->parsed()) {
        session.collide();
      } else if (lemmas->parsed()) {
        return session.check_lemmas();
      } else if (bench->parsed()) {
        session.bench();
      }
      return exit_ok;
    } catch (ParseError const& e) {
      err << "conecalc: parse error: " << e.what() << "\n";
      return exit_precondition;
    } catch (Error const& e) {
      err << "conecalc: " << e.what() << "\n";
      return exit_precondition;
    } catch (std::exception const& e) {
      err << "conecalc: internal error: " << e.what() << "\n";
      return exit_internal;
    }
  }

}  // namespace conecalc::cli
