#include "ingest/runners.hpp"

#include <charconv>
#include <set>

#include "core/clock.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "ingest/csv.hpp"

namespace runlabel {
namespace {

constexpr const char* kFinishColumn = "cumulativeTime_finish";

[[noreturn]] void malformed_row(std::size_t row_no, const std::string& why) {
  throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(row_no) + ": " + why);
}

bool header_is_full_marathon(const csv::Header& header) {
  for (const auto* name : {"cumulativeTime_25k", "cumulativeTime_30k", "cumulativeTime_35k",
                           "cumulativeTime_40k"}) {
    if (header.find(name)) return true;
  }
  return false;
}

}  // namespace

double finish_distance_km(Race race) noexcept {
  return race == Race::kFullMarathon ? kFullMarathonKm : kHalfMarathonKm;
}

const char* race_name(Race race) noexcept {
  return race == Race::kFullMarathon ? "full" : "half";
}

std::vector<SplitColumn> split_columns(Race race) {
  if (race == Race::kHalfMarathon) {
    return {{"cumulativeTime_5k", 5}, {"cumulativeTime_10k", 10}, {"cumulativeTime_15k", 15}};
  }
  return {{"cumulativeTime_5k", 5},   {"cumulativeTime_10k", 10}, {"cumulativeTime_15k", 15},
          {"cumulativeTime_20k", 20}, {"cumulativeTime_half", 21.1}, {"cumulativeTime_25k", 25},
          {"cumulativeTime_30k", 30}, {"cumulativeTime_35k", 35}, {"cumulativeTime_40k", 40}};
}

std::vector<RunnerRecord> parse_runner_csv(std::string_view text, std::optional<Race> race) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, "runner CSV has no header row");
  const csv::Header header(std::move(rows.front()));

  const auto bib_col = header.require("bib");
  const auto name_col = header.require("name");
  const auto gender_col = header.require("gender");
  const auto country_col = header.require("countryCode");
  const auto finish_col = header.require(kFinishColumn);

  const Race file_race = race.value_or(header_is_full_marathon(header) ? Race::kFullMarathon
                                                                      : Race::kHalfMarathon);
  std::vector<std::pair<std::size_t, double>> split_cols;
  for (const auto& sc : split_columns(file_race)) {
    if (auto i = header.find(sc.name)) split_cols.emplace_back(*i, sc.distance_km);
  }

  std::vector<RunnerRecord> out;
  std::set<std::int64_t> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t row_no = r;  // data rows numbered from 1
    if (row.size() != header.names().size()) {
      malformed_row(row_no, "expected " + std::to_string(header.names().size()) + " fields, got " +
                                std::to_string(row.size()));
    }
    RunnerRecord rec;
    rec.race = file_race;

    const auto& bib_text = row[bib_col];
    std::int64_t bib = 0;
    auto [ptr, ec] = std::from_chars(bib_text.data(), bib_text.data() + bib_text.size(), bib);
    if (ec != std::errc() || ptr != bib_text.data() + bib_text.size() || bib <= 0) {
      malformed_row(row_no, "unparseable bib '" + bib_text + "'");
    }
    rec.bib = bib;
    rec.name = row[name_col];
    rec.gender = row[gender_col];
    rec.country_code = row[country_col];

    auto parse_time = [&](const std::string& cell, const char* column) {
      try {
        return parse_clock_time(cell);
      } catch (const Error& e) {
        malformed_row(row_no, std::string(column) + ": " + e.what());
      }
    };
    for (const auto& [col, km] : split_cols) {
      if (row[col].empty()) continue;
      rec.splits[km] = parse_time(row[col], header.names()[col].c_str());
    }
    if (row[finish_col].empty()) malformed_row(row_no, "missing finish time");
    rec.finish_time_s = parse_time(row[finish_col], kFinishColumn);
    rec.splits[finish_distance_km(file_race)] = rec.finish_time_s;

    std::int64_t previous = 0;
    for (const auto& [km, t] : rec.splits) {
      if (t <= previous) {
        malformed_row(row_no, "split times must strictly increase with distance (at " +
                                  number_to_json(km).dump() + " km)");
      }
      previous = t;
    }

    if (!seen.insert(rec.bib).second) {
      throw Error(ErrorCode::kDuplicateBib,
                  "row " + std::to_string(row_no) + ": duplicate bib " + std::to_string(rec.bib));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<RunnerRecord> load_runner_csv(const std::filesystem::path& path, std::optional<Race> race) {
  return parse_runner_csv(read_text_file(path), race);
}

Json runner_to_json(const RunnerRecord& record) {
  Json splits = Json::object();
  for (const auto& [km, t] : record.splits) splits[number_to_json(km).dump()] = t;
  return {{"bib", record.bib},
          {"name", record.name},
          {"gender", record.gender},
          {"countryCode", record.country_code},
          {"race", race_name(record.race)},
          {"splits", std::move(splits)},
          {"finish_time_s", record.finish_time_s}};
}

std::string write_runner_csv(const std::vector<RunnerRecord>& records, Race race) {
  const auto splits = split_columns(race);
  csv::Row header = {"bib", "name", "gender", "countryCode"};
  for (const auto& sc : splits) header.emplace_back(sc.name);
  header.emplace_back(kFinishColumn);

  std::string out = csv::format_row(header);
  for (const auto& rec : records) {
    csv::Row row = {std::to_string(rec.bib), rec.name, rec.gender, rec.country_code};
    for (const auto& sc : splits) {
      auto it = rec.splits.find(sc.distance_km);
      row.push_back(it == rec.splits.end() ? std::string() : format_clock_time(it->second));
    }
    row.push_back(format_clock_time(rec.finish_time_s));
    out += csv::format_row(row);
  }
  return out;
}

}  // namespace runlabel
