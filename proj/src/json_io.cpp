#include "pmv/json_io.hpp"

#include <fstream>

#include "pmv/binary_io.hpp"

namespace pmv {

Json theta_to_json(Theta theta) {
  if (theta.is_infinite()) return "inf";
  return theta.value();
}

Theta theta_from_json(const Json& j) {
  if (j.is_string()) return Theta::parse(j.get<std::string>());
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    return Theta(j.get<std::uint64_t>());
  }
  throw FormatError("theta must be a non-negative integer or \"inf\"");
}

namespace {

Json histogram_to_json(const std::map<std::uint64_t, std::uint64_t>& hist) {
  Json out = Json::array();
  for (const auto& [d, c] : hist) out.push_back({d, c});
  return out;
}

std::map<std::uint64_t, std::uint64_t> histogram_from_json(const Json& j) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2) throw FormatError("histogram rows must be [degree, count]");
    out[row[0].get<std::uint64_t>()] += row[1].get<std::uint64_t>();
  }
  return out;
}

std::uint64_t weighted_sum(const std::map<std::uint64_t, std::uint64_t>& hist) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : hist) s += d * c;
  return s;
}

std::uint64_t count_sum(const std::map<std::uint64_t, std::uint64_t>& hist) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : hist) s += c;
  return s;
}

}  // namespace

Json stats_to_json(const DegreeStats& stats) {
  Json j;
  j["vertexCount"] = stats.vertex_count;
  j["edgeCount"] = stats.edge_count;
  j["inHist"] = histogram_to_json(stats.in_hist);
  j["outHist"] = histogram_to_json(stats.out_hist);
  return j;
}

DegreeStats stats_from_json(const Json& j) {
  DegreeStats s;
  try {
    s.in_hist = histogram_from_json(j.at("inHist"));
    s.out_hist = histogram_from_json(j.at("outHist"));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("stats: ") + e.what());
  }
  s.vertex_count = count_sum(s.in_hist);
  s.edge_count = weighted_sum(s.in_hist);
  if (count_sum(s.out_hist) != s.vertex_count || weighted_sum(s.out_hist) != s.edge_count) {
    throw FormatError("stats: in and out histograms disagree");
  }
  return s;
}

Json ledger_to_json(const IoLedger& l) {
  Json j;
  j["vectorRead"] = l.vector_read;
  j["intermediateWrite"] = l.intermediate_write;
  j["intermediateRead"] = l.intermediate_read;
  j["vectorWrite"] = l.vector_write;
  j["total"] = l.total();
  j["matrixRead"] = l.matrix_read;
  return j;
}

Json ledgers_to_json(const std::vector<IoLedger>& ledgers) {
  Json j;
  Json vr = Json::array(), iw = Json::array(), ir = Json::array(), vw = Json::array(), tot = Json::array();
  IoLedger sum;
  for (const auto& l : ledgers) {
    vr.push_back(l.vector_read);
    iw.push_back(l.intermediate_write);
    ir.push_back(l.intermediate_read);
    vw.push_back(l.vector_write);
    tot.push_back(l.total());
    sum += l;
  }
  j["vectorRead"] = vr;
  j["intermediateWrite"] = iw;
  j["intermediateRead"] = ir;
  j["vectorWrite"] = vw;
  j["total"] = tot;
  j["totals"] = ledger_to_json(sum);
  return j;
}

Json cost_to_json(const CostEstimate& c) {
  Json j;
  j["strategy"] = to_string(c.strategy);
  j["theta"] = theta_to_json(c.theta);
  j["vectorRead"] = c.vector_read;
  j["intermediateTransfer"] = c.intermediate_transfer;
  j["vectorWrite"] = c.vector_write;
  j["expectedElements"] = c.expected_elements();
  return j;
}

void write_ledger_csv(std::ostream& out, const std::vector<IoLedger>& ledgers, Strategy strategy, Theta theta) {
  out << "iteration,strategy,theta,vectorRead,intermediateWrite,intermediateRead,vectorWrite,total\n";
  for (std::size_t k = 0; k < ledgers.size(); ++k) {
    const auto& l = ledgers[k];
    out << (k + 1) << ',' << to_string(strategy) << ',' << theta.to_string() << ',' << l.vector_read << ','
        << l.intermediate_write << ',' << l.intermediate_read << ',' << l.vector_write << ',' << l.total() << '\n';
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  binio::write_file(path, text);
}

}  // namespace pmv
