#include "normforge/catalog.hpp"

#include "normforge/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>

namespace normforge {

// ---------------------------------------------------------------------------
// pi, varpi, delta

std::pair<std::int64_t, std::int64_t> pi(std::int64_t i) {
  if (i < 1) throw Error("pi: index must be positive");
  std::int64_t s = 1;
  while (s * (s + 1) / 2 < i) ++s;
  std::int64_t n = i - s * (s - 1) / 2;
  return {n, s + 1 - n};
}

std::int64_t pi_inverse(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw Error("pi_inverse: arguments must be positive");
  std::int64_t s = n + k - 1;
  return s * (s - 1) / 2 + n;
}

namespace {

struct VarpiTable {
  std::mutex mutex;
  std::vector<std::vector<int>> sequences;  // index i-1
  std::map<std::vector<int>, std::int64_t> inverse;
  int weight = 1;  // all weights below this are listed

  void emit(int w, std::vector<int>& prefix) {
    for (int a = 1; a + 1 <= w; ++a) {
      prefix.push_back(a);
      int rest = w - (a + 1);
      if (rest == 0) {
        sequences.push_back(prefix);
        inverse.emplace(prefix, static_cast<std::int64_t>(sequences.size()));
      } else if (rest >= 2) {
        emit(rest, prefix);
      }
      prefix.pop_back();
    }
  }

  void grow() {
    std::vector<int> prefix;
    emit(++weight, prefix);
  }
};

VarpiTable& varpi_table() {
  static VarpiTable table;
  return table;
}

int weight_of(const std::vector<int>& eta) {
  int w = 0;
  for (int e : eta) w += e + 1;
  return w;
}

}  // namespace

std::vector<int> varpi(std::int64_t i) {
  if (i < 1) throw Error("varpi: index must be positive");
  auto& t = varpi_table();
  std::lock_guard lock(t.mutex);
  while (static_cast<std::int64_t>(t.sequences.size()) < i) t.grow();
  return t.sequences[static_cast<std::size_t>(i - 1)];
}

std::int64_t varpi_inverse(const std::vector<int>& eta) {
  if (eta.empty()) throw Error("varpi_inverse: empty sequence");
  for (int e : eta) {
    if (e < 1) throw Error("varpi_inverse: entries must be positive");
  }
  auto& t = varpi_table();
  std::lock_guard lock(t.mutex);
  const int w = weight_of(eta);
  if (w > 60) throw Error("varpi_inverse: sequence weight too large");
  while (t.weight < w) t.grow();
  return t.inverse.at(eta);
}

std::vector<std::int64_t> delta(const std::vector<int>& prefix) {
  if (prefix.empty()) throw Error("delta: empty prefix");
  std::vector<std::int64_t> out;
  std::vector<int> eta;
  for (int p : prefix) {
    eta.push_back(p);
    out.push_back(varpi_inverse(eta));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::size_t encoding_size(const PolytopeBall& ball) {
  std::size_t s = 0;
  for (const auto& g : ball.generators()) {
    for (Index i = 0; i < g.size(); ++i) s += encoding_bits(g(i));
  }
  return s;
}

namespace {

std::size_t vec_size(const RatVec& v) {
  std::size_t s = 0;
  for (Index i = 0; i < v.size(); ++i) s += encoding_bits(v(i));
  return s;
}

// All canonical rationals of encoding size exactly b, increasing.
const std::vector<Rat>& rationals_of_size(std::size_t b) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Rat>> memo;
  std::lock_guard lock(mutex);
  auto it = memo.find(b);
  if (it != memo.end()) return it->second;
  std::vector<Rat> out;
  if (b == 1) out.push_back(Rat(0));
  for (std::size_t a = 1; a < b; ++a) {
    for (int negative = 0; negative < 2; ++negative) {
      if (a + static_cast<std::size_t>(negative) >= b) continue;
      std::size_t c = b - a - static_cast<std::size_t>(negative);
      if (c < 1 || a > 40 || c > 40) continue;
      for (long p = 1L << (a - 1); p < (1L << a); ++p) {
        for (long q = 1L << (c - 1); q < (1L << c); ++q) {
          if (std::gcd(p, q) != 1) continue;
          out.push_back(negative ? Rat(-p) / q : Rat(p) / q);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return memo.emplace(b, std::move(out)).first->second;
}

// Sign-normalized nonzero vectors in R^d of total size at most max_size.
std::vector<RatVec> vectors_up_to(Index d, std::size_t max_size) {
  std::vector<RatVec> out;
  RatVec cur(d);
  auto rec = [&](auto&& self, Index i, std::size_t budget, bool leading_zero) -> void {
    if (i == d) {
      if (!leading_zero) out.push_back(cur);
      return;
    }
    std::size_t rest_min = static_cast<std::size_t>(d - i - 1);
    for (std::size_t b = 1; b + rest_min <= budget; ++b) {
      for (const Rat& r : rationals_of_size(b)) {
        if (leading_zero && r < 0) continue;
        cur(i) = r;
        self(self, i + 1, budget - b, leading_zero && r == 0);
      }
    }
  };
  rec(rec, 0, max_size, true);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool parallel(const RatVec& a, const RatVec& b) {
  Index i = 0;
  while (a(i) == 0 && b(i) == 0) ++i;
  if (a(i) == 0 || b(i) == 0) return false;
  Rat r = a(i) / b(i);
  for (Index j = 0; j < a.size(); ++j) {
    if (a(j) != r * b(j)) return false;
  }
  return true;
}

class Stream {
 public:
  Stream(Index d, std::optional<PolytopeBall> prefix, std::string cache_key)
      : d_(d), prefix_(std::move(prefix)), cache_key_(std::move(cache_key)) {
    load();
  }

  const PolytopeBall& get(std::size_t l) {
    while (entries_.size() < l) extend();
    return entries_[l - 1];
  }

  const PolytopeBall* get_bounded(std::size_t l, std::size_t max_size) {
    while (entries_.size() < l) {
      if (max_size != 0 && level_ + 1 > max_size) return nullptr;
      extend();
    }
    return &entries_[l - 1];
  }

  std::size_t cached() const { return entries_.size(); }

 private:
  void extend() {
    ++level_;
    // A nonzero vector has a coordinate of size at least 2.
    const std::size_t min_vec = static_cast<std::size_t>(d_) + 1;
    const std::size_t others = static_cast<std::size_t>(d_ - 1) * min_vec;
    if (level_ < min_vec + others) {
      save();
      return;
    }
    std::vector<RatVec> cand;
    for (auto& v : vectors_up_to(d_, level_ - others)) {
      if (prefix_ && !prefix_->contains(v.head(d_ - 1))) continue;
      cand.push_back(std::move(v));
    }
    std::vector<std::size_t> sizes;
    for (const auto& v : cand) sizes.push_back(vec_size(v));
    std::vector<std::size_t> chosen;
    auto dfs = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
      if (remaining == 0) {
        if (static_cast<Index>(chosen.size()) >= d_) accept(cand, chosen);
        return;
      }
      for (std::size_t i = start; i < cand.size(); ++i) {
        if (sizes[i] > remaining) continue;
        std::size_t rest = remaining - sizes[i];
        if (rest != 0 && rest < min_vec) continue;
        if (static_cast<Index>(chosen.size() + 1 + rest / min_vec) < d_) continue;
        bool par = false;
        for (auto j : chosen) {
          if (parallel(cand[i], cand[j])) {
            par = true;
            break;
          }
        }
        if (par) continue;
        chosen.push_back(i);
        self(self, i + 1, rest);
        chosen.pop_back();
      }
    };
    dfs(dfs, 0, level_);
    save();
  }

  void accept(const std::vector<RatVec>& cand, const std::vector<std::size_t>& chosen) {
    std::vector<RatVec> set;
    for (auto i : chosen) set.push_back(cand[i]);
    if (rank(set) < d_) return;
    PolytopeBall ball(set);
    if (ball.generators().size() != set.size()) return;
    if (!is_monotone(ball).monotone) return;
    if (prefix_ && !(ball.section(d_ - 1) == *prefix_)) return;
    entries_.push_back(std::move(ball));
  }

  std::filesystem::path cache_path() const {
    const char* dir = std::getenv("NORMFORGE_CACHE");
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / ("catalog-" + cache_key_ + ".json");
  }

  void load() {
    auto path = cache_path();
    if (path.empty() || !std::filesystem::exists(path)) return;
    try {
      std::ifstream in(path);
      auto j = nlohmann::json::parse(in);
      std::deque<PolytopeBall> entries;
      for (const auto& e : j.at("entries")) {
        std::vector<RatVec> g;
        for (const auto& row : e) g.push_back(parse_vec(row.get<std::vector<std::string>>()));
        entries.emplace_back(g);
      }
      entries_ = std::move(entries);
      level_ = j.at("level").get<std::size_t>();
    } catch (const std::exception&) {
      entries_.clear();
      level_ = 0;
    }
  }

  void save() const {
    auto path = cache_path();
    if (path.empty()) return;
    nlohmann::json j;
    j["level"] = level_;
    j["entries"] = nlohmann::json::array();
    for (const auto& b : entries_) {
      nlohmann::json e = nlohmann::json::array();
      for (const auto& g : b.generators()) e.push_back(to_strings(g));
      j["entries"].push_back(std::move(e));
    }
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
  }

  Index d_;
  std::optional<PolytopeBall> prefix_;
  std::string cache_key_;
  std::deque<PolytopeBall> entries_;
  std::size_t level_ = 0;
};

struct Registry {
  std::recursive_mutex mutex;
  std::map<std::string, std::unique_ptr<Stream>> streams;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::string ball_key(const PolytopeBall& b) {
  std::string s;
  for (const auto& g : b.generators()) {
    for (const auto& c : to_strings(g)) s += c + ",";
    s += ";";
  }
  return hex64(fnv1a(s));
}

Stream& stream_for(Index d, const std::optional<PolytopeBall>& prefix) {
  std::string key = "d" + std::to_string(d) + (prefix ? "-" + ball_key(*prefix) : std::string());
  auto& reg = registry();
  auto it = reg.streams.find(key);
  if (it == reg.streams.end()) it = reg.streams.emplace(key, std::make_unique<Stream>(d, prefix, key)).first;
  return *it->second;
}

}  // namespace

namespace detail {
const PolytopeBall* catalog_entry_bounded(Index d, std::size_t l, std::size_t max_size) {
  if (d < 1) throw Error("catalog: dimension must be positive");
  if (l < 1) throw Error("catalog: index must be positive");
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  return stream_for(d, std::nullopt).get_bounded(l, max_size);
}

const PolytopeBall& catalog_entry(Index d, std::size_t l) {
  if (d < 1) throw Error("catalog: dimension must be positive");
  if (l < 1) throw Error("catalog: index must be positive");
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  return stream_for(d, std::nullopt).get(l);
}
}  // namespace detail

PolytopeBall rational_norm(Index d, std::size_t l) { return detail::catalog_entry(d, l); }

std::size_t catalog_cached(Index d) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  return stream_for(d, std::nullopt).cached();
}

PolytopeBall catalog_ball(const std::vector<int>& eta) {
  if (eta.empty()) throw Error("catalog_space: empty index");
  for (int e : eta) {
    if (e < 1) throw Error("catalog_space: entries must be positive");
  }
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  PolytopeBall ball = stream_for(1, std::nullopt).get(static_cast<std::size_t>(eta[0]));
  for (std::size_t i = 1; i < eta.size(); ++i) {
    PolytopeBall next = stream_for(static_cast<Index>(i + 1), ball).get(static_cast<std::size_t>(eta[i]));
    ball = std::move(next);
  }
  return ball;
}

BasisSpace catalog_space(const std::vector<int>& eta) {
  return BasisSpace::polytope(catalog_ball(eta), {"monotone"});
}

std::optional<std::size_t> find_child_index(const std::vector<int>& eta, const PolytopeBall& extension,
                                             std::size_t budget) {
  PolytopeBall parent = catalog_ball(eta);
  const Index d = parent.dim() + 1;
  if (extension.dim() != d) throw DimensionMismatch("find_child_index: extension has the wrong dimension");
  if (!is_monotone(extension).monotone) throw Error("find_child_index: extension is not monotone");
  if (!(extension.section(d - 1) == parent)) throw Error("find_child_index: not an extension of Z_eta");
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  Stream& s = stream_for(d, parent);
  for (std::size_t j = 1; j <= budget; ++j) {
    if (s.get(j) == extension) return j;
  }
  return std::nullopt;
}

}  // namespace normforge
