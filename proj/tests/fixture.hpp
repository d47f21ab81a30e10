#pragma once

// A small data root shared by the service, C API and CLI tests. Plain text
// only, so it needs nothing beyond the standard library.
//
//   videos.json              loc17_0001: 10 s at 30 fps, 1280x720, location 17
//   frames/loc17_0001/       frame_000000.png .. frame_000002.png (+ frames.txt)
//   runners/full.csv         bibs 1, 123, 2301 pass 17 km at 3600, 3500, 3700 s
//   gallery.json             three 2-d features
//
// Passing times: 15 km and 20 km splits are 1500 s apart, so 17 km sits at
// t15 + 600.

#include <filesystem>
#include <fstream>
#include <string>

namespace fixture {

inline constexpr const char* kVideo = "loc17_0001";

inline const char* kRunnersCsv =
    "bib,name,gender,countryCode,cumulativeTime_5k,cumulativeTime_10k,cumulativeTime_15k,cumulativeTime_20k,"
    "cumulativeTime_half,cumulativeTime_25k,cumulativeTime_30k,cumulativeTime_35k,cumulativeTime_40k,"
    "cumulativeTime_finish\n"
    "1,Hannah Smith,F,NL,,,0:50:00,1:15:00,,,,,,3:00:00\n"
    "123,Annette Jones,F,BE,,,0:48:20,1:13:20,,,,,,3:00:00\n"
    "2301,Bob Brown,M,DE,,,0:51:40,1:16:40,,,,,,3:00:00\n";

inline const char* kManifest = R"([{
  "FileName": "loc17_0001.MP4", "FileSize": "21.92 MB", "FileType": "MP4", "Duration": 10,
  "VideoFrameRate": 30, "ImageSize": "1280x720", "TrackCreateDate": "2019:10:13 09:43:55",
  "GPSCoordinates": "51.4839 5.4642", "LocationNumber": 17
}])";

inline const char* kGallery = R"([
  {"image_id": "g0", "label": "1", "feature": [0, 0]},
  {"image_id": "g1", "label": "123", "feature": [3, 4]},
  {"image_id": "g2", "feature": [6, 8]}
])";

inline void write(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline void write_data_root(const std::filesystem::path& root, bool with_gallery = true) {
  write(root / "videos.json", kManifest);
  const auto frames = root / "frames" / kVideo;
  std::string list;
  for (int i = 0; i < 3; ++i) {
    const std::string name = "frame_00000" + std::to_string(i) + ".png";
    write(frames / name, "frame-bytes-" + std::to_string(i));
    list += name + "\n";
  }
  write(frames / "frames.txt", list);
  write(root / "runners" / "full.csv", kRunnersCsv);
  if (with_gallery) write(root / "gallery.json", kGallery);
}

}  // namespace fixture
