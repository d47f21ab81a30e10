#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "core/json_io.hpp"
#include "ingest/csv.hpp"
#include "ingest/frames.hpp"
#include "ingest/runners.hpp"
#include "ingest/video_meta.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace runlabel;

namespace {

Json meta_json(const std::string& name, double duration, int location = 3) {
  return {{"FileName", name},
          {"FileSize", "21.92 MB"},
          {"FileType", "MP4"},
          {"Duration", duration},
          {"VideoFrameRate", 30},
          {"ImageSize", "1280x720"},
          {"TrackCreateDate", "2019:10:13 09:43:55"},
          {"GPSCoordinates", "51.4839 5.4642"},
          {"LocationNumber", location}};
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const char* kFullHeader =
    "bib,name,gender,countryCode,cumulativeTime_5k,cumulativeTime_10k,cumulativeTime_15k,cumulativeTime_20k,"
    "cumulativeTime_half,cumulativeTime_25k,cumulativeTime_30k,cumulativeTime_35k,cumulativeTime_40k,"
    "cumulativeTime_finish\n";

}  // namespace

TEST(Csv, QuotedFieldsAndBlankLines) {
  const auto rows = csv::parse("a,b,c\r\n\"x, y\",\"he said \"\"hi\"\"\",\n\n1,2,3");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "x, y");
  EXPECT_EQ(rows[1][1], "he said \"hi\"");
  EXPECT_EQ(rows[1][2], "");
  EXPECT_EQ(rows[2][2], "3");
  EXPECT_CODE(csv::parse("a,\"b\n"), kMalformedRow);
  EXPECT_EQ(csv::format_row({"x, y", "plain", "q\""}), "\"x, y\",plain,\"q\"\"\"\n");
}

TEST(Csv, HeaderStripsBom) {
  const csv::Header h({"\xEF\xBB\xBF" "bib", "name"});
  EXPECT_EQ(h.require("bib"), 0u);
  EXPECT_FALSE(h.find("gender"));
  EXPECT_CODE(h.require("gender"), kMissingColumn);
}

TEST(VideoMeta, ParsesTableOneFields) {
  const auto m = video_meta_from_json(meta_json("loc3_0001.MP4", 94.5));
  EXPECT_EQ(m.video_id(), "loc3_0001");
  EXPECT_DOUBLE_EQ(m.file_size_mb, 21.92);
  EXPECT_EQ(m.width, 1280);
  EXPECT_EQ(m.height, 720);
  ASSERT_TRUE(m.gps);
  EXPECT_DOUBLE_EQ(m.gps->lat, 51.4839);
  EXPECT_EQ(m.frame_count(), 2835);
  EXPECT_EQ(video_meta_from_json(video_meta_to_json(m)), m);

  auto j = meta_json("a.MP4", 10);
  j["Duration"] = "0:01:34";
  EXPECT_DOUBLE_EQ(video_meta_from_json(j).duration_s, 94);
}

TEST(VideoMeta, RejectsBadEntries) {
  for (auto mutate : std::vector<std::function<void(Json&)>>{
           [](Json& j) { j.erase("FileName"); },
           [](Json& j) { j["ImageSize"] = "1280 by 720"; },
           [](Json& j) { j["TrackCreateDate"] = "yesterday"; },
           [](Json& j) { j["LocationNumber"] = 43; },
           [](Json& j) { j["Duration"] = -1; },
           [](Json& j) { j["GPSCoordinates"] = "north"; },
       }) {
    auto j = meta_json("a.MP4", 10);
    mutate(j);
    EXPECT_CODE(video_meta_from_json(j), kMalformedManifest);
  }
  EXPECT_CODE(parse_video_manifest(Json::object()), kMalformedManifest);
}

TEST(DatasetStats, Examples) {
  const auto two = parse_video_manifest(Json::array({meta_json("a.MP4", 90), meta_json("b.MP4", 100)}));
  const auto s = dataset_stats(two);
  EXPECT_EQ(s.count, 2u);
  EXPECT_DOUBLE_EQ(s.mean_duration_s, 95);
  EXPECT_DOUBLE_EQ(s.std_duration_s, 5);  // population
  EXPECT_EQ(s.total_frames, 5700);
  EXPECT_NEAR(s.total_duration_h, 190.0 / 3600.0, 1e-12);

  const auto one = dataset_stats(parse_video_manifest(Json::array({meta_json("a.MP4", 42)})));
  EXPECT_DOUBLE_EQ(one.std_duration_s, 0);
  EXPECT_CODE(dataset_stats({}), kEmptyManifest);
}

TEST(Subsample, Examples) {
  const auto five = subsample_frames(2850, 5);
  EXPECT_EQ(five.size(), 475u);
  EXPECT_EQ(five.front(), 0);
  EXPECT_EQ(five.back(), 2844);
  EXPECT_EQ(five, oracle::subsample_enum(2850, 5));
  EXPECT_EQ(subsample_frames(2850, 30).size(), 2850u);
  EXPECT_CODE(subsample_frames(2850, 7), kNonDivisorFps);
  EXPECT_CODE(subsample_frames(2850, 0), kNonDivisorFps);
  EXPECT_TRUE(subsample_frames(0, 5).empty());
}

TEST(Subsample, PropertiesAgainstEnumeration) {
  const int divisors[] = {1, 2, 3, 5, 6, 10, 15, 30};
  std::mt19937 rng(5);
  for (int n = 0; n < 200; ++n) {
    const std::int64_t count = rng() % 400;
    for (int fps : divisors) {
      const auto got = subsample_frames(count, fps);
      ASSERT_EQ(got, oracle::subsample_enum(count, fps));
      const std::int64_t stride = 30 / fps;
      ASSERT_EQ(static_cast<std::int64_t>(got.size()), (count + stride - 1) / stride);
      ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
      ASSERT_EQ(std::adjacent_find(got.begin(), got.end()), got.end());
      if (count > 0) {
        ASSERT_EQ(got.front(), 0);
      }
      for (int b : divisors) {
        if (b % fps != 0) continue;
        const auto finer = subsample_frames(count, b);
        ASSERT_TRUE(std::includes(finer.begin(), finer.end(), got.begin(), got.end()));
      }
    }
    ASSERT_EQ(subsample_frames(count, 30).size(), static_cast<std::size_t>(count));
  }
}

TEST(FrameSequence, LoadsFrameList) {
  TempDir dir;
  write(dir / "frames.txt", "frame_000000.png\nframe_000001.png\r\n\nframe_000002.png\n");
  const auto seq = load_frame_sequence(dir.path(), "v");
  EXPECT_EQ(seq.frame_count(), 3);
  EXPECT_EQ(seq.frame_path(2), dir / "frame_000002.png");
  EXPECT_CODE(seq.frame_path(3), kNotFound);
  EXPECT_EQ(subsample_frames(seq, 15), (std::vector<std::int64_t>{0, 2}));

  write(dir / "frames.txt", "frame_000002.png\nframe_000001.png\n");
  EXPECT_CODE(load_frame_sequence(dir.path(), "v"), kMalformedManifest);
  write(dir / "frames.txt", "cover.png\n");
  EXPECT_CODE(load_frame_sequence(dir.path(), "v"), kMalformedManifest);
  EXPECT_CODE(load_frame_sequence(dir / "nope", "v"), kIo);
}

TEST(Runners, ResultsRowExample) {
  const auto recs = parse_runner_csv(
      "bib,name,gender,countryCode,cumulativeTime_5k,cumulativeTime_10k,cumulativeTime_15k,cumulativeTime_finish\n"
      "101,Ann Smith,F,NL,0:25:00,,,1:45:00\n");
  ASSERT_EQ(recs.size(), 1u);
  const auto& r = recs[0];
  EXPECT_EQ(r.bib, 101);
  EXPECT_EQ(r.race, Race::kHalfMarathon);
  EXPECT_EQ(r.splits, (std::map<double, std::int64_t>{{5, 1500}, {21.1, 6300}}));
  EXPECT_EQ(r.finish_time_s, 6300);
}

TEST(Runners, FullMarathonWithGap) {
  const std::string text = std::string(kFullHeader) +
                           "7,Bob,M,BE,0:20:00,0:40:00,1:00:00,,1:25:00,1:40:00,2:00:00,2:20:00,2:40:00,2:50:00\n";
  const auto r = parse_runner_csv(text).at(0);
  EXPECT_EQ(r.race, Race::kFullMarathon);
  EXPECT_FALSE(r.splits.count(20));
  EXPECT_EQ(r.splits.at(15), 3600);
  EXPECT_EQ(r.splits.at(21.1), 5100);
  EXPECT_EQ(r.splits.at(25), 6000);
  EXPECT_EQ(r.splits.at(42), 10200);
}

TEST(Runners, Errors) {
  const std::string head = "bib,name,gender,countryCode,cumulativeTime_5k,cumulativeTime_finish\n";
  EXPECT_CODE(parse_runner_csv(head + "5,A,F,NL,0:20:00,1:40:00\n5,B,F,NL,0:21:00,1:41:00\n"), kDuplicateBib);
  EXPECT_CODE(parse_runner_csv("bib,name,gender,countryCode\n1,a,b,c\n"), kMissingColumn);
  try {
    parse_runner_csv(head + "5,A,F,NL,0:20:00,1:40:00\nx5,B,F,NL,0:21:00,1:41:00\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRow);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  EXPECT_CODE(parse_runner_csv(head + "5,A,F,NL,0:20:00\n"), kMalformedRow);
  EXPECT_CODE(parse_runner_csv(head + "5,A,F,NL,2:20:00,1:40:00\n"), kMalformedRow);
  EXPECT_CODE(parse_runner_csv(head + "5,A,F,NL,0:20:00,\n"), kMalformedRow);
  EXPECT_CODE(parse_runner_csv(head + "5,A,F,NL,0:20:xx,1:40:00\n"), kMalformedRow);
}

TEST(Runners, ReserializeIsByteIdentical) {
  const std::string full = std::string(kFullHeader) +
                           "7,\"Bob, Jr.\",M,BE,0:20:00,0:40:00,1:00:00,,1:25:00,1:40:00,2:00:00,2:20:00,2:40:00,"
                           "2:50:00\n"
                           "12,Cleo,F,NL,0:22:00,0:44:00,1:06:00,1:28:00,1:33:00,1:51:00,,2:35:00,3:00:00,3:10:00\n";
  EXPECT_EQ(write_runner_csv(parse_runner_csv(full), Race::kFullMarathon), full);

  const std::string half =
      "bib,name,gender,countryCode,cumulativeTime_5k,cumulativeTime_10k,cumulativeTime_15k,cumulativeTime_finish\n"
      "101,Ann Smith,F,NL,0:25:00,,1:15:00,1:45:00\n";
  EXPECT_EQ(write_runner_csv(parse_runner_csv(half), Race::kHalfMarathon), half);
}

TEST(Runners, RandomRoundTrip) {
  std::mt19937 rng(17);
  for (int n = 0; n < 50; ++n) {
    std::vector<RunnerRecord> recs;
    for (int i = 0; i < 5; ++i) {
      RunnerRecord r;
      r.bib = 1 + n * 10 + i;
      r.name = "Runner " + std::to_string(r.bib);
      r.gender = i % 2 ? "F" : "M";
      r.country_code = "NL";
      r.race = Race::kFullMarathon;
      std::int64_t t = 0;
      for (const auto& sc : split_columns(Race::kFullMarathon)) {
        t += 600 + rng() % 1200;
        if (rng() % 4) r.splits[sc.distance_km] = t;
      }
      r.finish_time_s = t + 300 + rng() % 600;
      r.splits[42] = r.finish_time_s;
      recs.push_back(r);
    }
    const auto text = write_runner_csv(recs, Race::kFullMarathon);
    ASSERT_EQ(parse_runner_csv(text), recs);
    ASSERT_EQ(write_runner_csv(parse_runner_csv(text), Race::kFullMarathon), text);
  }
}

TEST(ValidateAgainstVideo, FlagsOutOfFrameAndPastEnd) {
  const auto meta = video_meta_from_json(meta_json("v.MP4", 10));  // 300 frames, 1280x720
  AnnotationDocument doc;
  doc.video_id = "v";
  doc.tracks.emplace_back(Identity::bib(1), "v",
                          std::vector<KeyframeAnnotation>{{{"v", 0}, make_box(0, 0, 10, 10)}});
  EXPECT_TRUE(validate_against_video(doc, meta).empty());
  doc.tracks.emplace_back(Identity::bib(2), "v",
                          std::vector<KeyframeAnnotation>{{{"v", 0}, make_box(1270, 0, 1290, 10)},
                                                          {{"v", 300}, make_box(0, 0, 10, 10)}});
  doc.frame_ranges.push_back({Identity::bib(3), "v", 0, 400});
  EXPECT_EQ(validate_against_video(doc, meta).size(), 3u);
}
