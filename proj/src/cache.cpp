#include "conecalc/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "conecalc/error.hpp"

namespace conecalc {

  namespace fs = std::filesystem;

  namespace {
    std::string sha256_hex(std::string const& data) {
      unsigned char digest[EVP_MAX_MD_SIZE];
      unsigned int  len = 0;
      if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
      }
      std::ostringstream out;
      for (unsigned int i = 0; i < len; ++i) {
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
      }
      return out.str();
    }

    std::string utc_timestamp() {
      auto const  now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      std::tm     tm{};
      gmtime_r(&now, &tm);
      std::ostringstream out;
      out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
      return out.str();
    }

    std::mutex warn_mutex;
  }  // namespace

  NormCache::NormCache(fs::path directory, std::ostream* warnings)
      : directory_(std::move(directory)), warnings_(warnings) {
    std::error_code ec;
    fs::create_directories(*directory_, ec);
    if (ec) {
      warn("cache directory " + directory_->string() + " unavailable (" + ec.message()
           + "); computing without cache");
      directory_.reset();
    }
  }

  fs::path NormCache::default_directory() {
    if (char const* dir = std::getenv("CONECALC_CACHE"); dir && *dir) {
      return dir;
    }
    if (char const* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
      return fs::path(xdg) / "conecalc";
    }
    if (char const* home = std::getenv("HOME"); home && *home) {
      return fs::path(home) / ".cache" / "conecalc";
    }
    return fs::temp_directory_path() / "conecalc-cache";
  }

  std::string NormCache::key(WeightedAlphabet const& alphabet, Word const& w) {
    std::string material = "conecalc-norm-v1\n";
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      material += alphabet.name(i) + "=" + to_fraction_string(alphabet.weight(i)) + "\n";
    }
    material += "word:";
    for (auto l : reduce(w)) {
      material += ' ' + std::to_string(l.code());
    }
    return sha256_hex(material);
  }

  fs::path NormCache::entry_path(std::string const& key) const {
    return directory_.value_or(fs::path()) / (key + ".json");
  }

  std::optional<Rational> NormCache::load(std::string const& key) const {
    std::ifstream in(entry_path(key));
    if (!in) {
      return std::nullopt;
    }
    try {
      auto const j = nlohmann::json::parse(in);
      if (j.at("key").get<std::string>() != key) {
        return std::nullopt;
      }
      return parse_rational(j.at("value").get<std::string>());
    } catch (std::exception const&) {
      return std::nullopt;
    }
  }

  void NormCache::store(std::string const& key, Rational const& value) {
    nlohmann::json j = {{"key", key},
                        {"value", to_fraction_string(value)},
                        {"created", utc_timestamp()},
                        {"tool_version", tool_version}};
    thread_local std::mt19937_64 rng(std::random_device{}());
    fs::path const               final_path = entry_path(key);
    fs::path const tmp = final_path.string() + ".tmp" + std::to_string(rng());
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << j.dump() << '\n';
      if (!out) {
        warn("cannot write cache entry " + tmp.string());
        std::error_code ec;
        fs::remove(tmp, ec);
        return;
      }
    }
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) {
      warn("cannot publish cache entry " + final_path.string() + ": " + ec.message());
      fs::remove(tmp, ec);
    }
  }

  void NormCache::warn(std::string const& message) {
    if (warnings_ != nullptr) {
      std::lock_guard lock(warn_mutex);
      *warnings_ << "warning: " << message << '\n';
    }
  }

  Rational NormCache::get_or_compute(WeightedAlphabet const&          alphabet,
                                     Word const&                      w,
                                     std::function<Rational()> const& compute) {
    if (!directory_) {
      return compute();
    }
    std::string const k = key(alphabet, w);
    if (auto cached = load(k)) {
      ++hits_;
      return *cached;
    }
    ++misses_;
    Rational value = compute();
    store(k, value);
    return value;
  }

}  // namespace conecalc
