#include "ncdef/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iostream>
#include <random>

namespace ncdef {

namespace {

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [w, c] : p) out.push_back(Json::array({w, scalar_to_json(c)}));
  return out;
}

Poly poly_from_json(const Json& j, const Field& f) {
  Poly p;
  for (const auto& t : j) p[t.at(0).get<std::size_t>()] = scalar_from_json(t.at(1), f);
  return p;
}

Json cochain_to_json(const Cochain& c) {
  Json vals = Json::array();
  for (const auto& m : c.values) vals.push_back(matrix_to_json(m));
  return Json{{"degree", c.degree}, {"src", c.src}, {"tgt", c.tgt}, {"values", vals}};
}

Cochain cochain_from_json(const Json& j, const Complex& cx) {
  Cochain c = cx.zero(j.at("degree").get<std::size_t>(), j.at("src").get<std::size_t>(), j.at("tgt").get<std::size_t>());
  const Json& vals = j.at("values");
  if (vals.size() != c.values.size()) throw std::runtime_error("cochain length mismatch");
  for (std::size_t k = 0; k < vals.size(); ++k)
    c.values[k] = matrix_from_json(vals[k], cx.mdim(c.src), cx.mdim(c.tgt), cx.field(), "cached cochain");
  return c;
}

}  // namespace

Json pro_to_json(const ProCouple& pro) {
  Json arrows = Json::array();
  for (const auto& a : pro.quiver.arrows) arrows.push_back(Json{{"name", a.name}, {"from", a.source}, {"to", a.target}});
  Json rels = Json::array();
  for (const auto& r : pro.level.relations)
    rels.push_back(Json{{"src", r.src}, {"tgt", r.tgt}, {"cls", r.cls}, {"name", r.name}, {"poly", poly_to_json(r.poly)}});
  Json action = Json::array();
  for (const auto& [w, c] : pro.level.action) action.push_back(Json{{"word", w}, {"psi", cochain_to_json(c)}});
  Json history = Json::array();
  for (const auto& h : pro.history)
    history.push_back(Json{{"n", h.n}, {"relations", h.relations}, {"graded_dims", h.graded_dims}});
  return Json{{"points", pro.quiver.points},
              {"arrows", arrows},
              {"ext1_dims", pro.ext1_dims},
              {"degree_cap", pro.degree_cap},
              {"top_degree", pro.top_degree},
              {"stabilized", pro.stabilized},
              {"level",
               Json{{"n", pro.level.n},
                    {"relations", rels},
                    {"normal", pro.level.normal},
                    {"action", action},
                    {"rendered", pro.level.rendered},
                    {"graded_dims", pro.level.graded_dims}}},
              {"history", history},
              {"class_names", pro.class_names},
              {"kernel_chain", pro.kernel_chain}};
}

ProCouple pro_from_json(const Json& j, const Complex& cx) {
  const Field& f = cx.field();
  ProCouple pro;
  pro.quiver.points = j.at("points").get<std::size_t>();
  for (const auto& a : j.at("arrows"))
    pro.quiver.arrows.push_back(Arrow{a.at("name").get<std::string>(), a.at("from").get<std::size_t>(),
                                      a.at("to").get<std::size_t>()});
  pro.ext1_dims = j.at("ext1_dims").get<std::vector<std::vector<std::size_t>>>();
  pro.degree_cap = j.at("degree_cap").get<std::size_t>();
  pro.top_degree = j.at("top_degree").get<std::size_t>();
  pro.stabilized = j.at("stabilized").get<bool>();
  const Json& lv = j.at("level");
  pro.level.n = lv.at("n").get<std::size_t>();
  for (const auto& r : lv.at("relations"))
    pro.level.relations.push_back(HullRelation{r.at("src").get<std::size_t>(), r.at("tgt").get<std::size_t>(),
                                               r.at("cls").get<std::size_t>(), r.at("name").get<std::string>(),
                                               poly_from_json(r.at("poly"), f)});
  pro.level.normal = lv.at("normal").get<std::vector<std::size_t>>();
  for (const auto& a : lv.at("action"))
    pro.level.action.emplace(a.at("word").get<std::size_t>(), cochain_from_json(a.at("psi"), cx));
  pro.level.rendered = lv.at("rendered").get<std::vector<std::string>>();
  pro.level.graded_dims = lv.at("graded_dims").get<std::vector<std::size_t>>();
  for (const auto& h : j.at("history"))
    pro.history.push_back(LevelRecord{h.at("n").get<std::size_t>(), h.at("relations").get<std::vector<std::string>>(),
                                      h.at("graded_dims").get<std::vector<std::size_t>>()});
  pro.class_names = j.at("class_names").get<std::vector<std::string>>();
  pro.kernel_chain = j.at("kernel_chain").get<std::vector<std::size_t>>();
  for (auto w : pro.level.normal)
    if (!pro.level.action.count(w)) throw std::runtime_error("normal word without action");
  return pro;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

HullCache::HullCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::string HullCache::key(const std::string& scenario_bytes, const Conventions& conv, std::size_t degree_cap) {
  Json k{{"version", kToolVersion},
         {"conventions", conventions_to_json(conv)},
         {"degree_cap", degree_cap},
         {"scenario_sha256", sha256_hex(scenario_bytes)}};
  return sha256_hex(k.dump());
}

std::filesystem::path HullCache::entry(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<ProCouple> HullCache::load(const std::string& key, const Complex& cx) const {
  const auto path = entry(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    std::ifstream in(path, std::ios::binary);
    const Json j = Json::parse(in);
    if (j.at("version").get<std::string>() != kToolVersion || j.at("key").get<std::string>() != key)
      throw std::runtime_error("stale entry");
    return pro_from_json(j.at("hull"), cx);
  } catch (const std::exception& e) {
    std::cerr << "warning: discarding cache entry " << path.string() << " (" << e.what() << ")\n";
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
  }
}

void HullCache::store(const std::string& key, const ProCouple& pro) const {
  const Json j{{"version", kToolVersion}, {"key", key}, {"hull", pro_to_json(pro)}};
  std::random_device rd;
  const auto tmp = dir_ / (key + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << j.dump();
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, entry(key));
}

}  // namespace ncdef
