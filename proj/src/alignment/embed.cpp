#include "alignment/embed.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "core/error.hpp"

namespace runlabel {

RgbImage decode_image(std::span<const std::uint8_t> encoded) {
  if (encoded.empty()) throw Error(ErrorCode::kUndecodableImage, "empty image data");
  cv::Mat raw(1, static_cast<int>(encoded.size()), CV_8UC1, const_cast<std::uint8_t*>(encoded.data()));
  cv::Mat bgr;
  try {
    bgr = cv::imdecode(raw, cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::kUndecodableImage, std::string("cannot decode image: ") + e.what());
  }
  if (bgr.empty()) throw Error(ErrorCode::kUndecodableImage, "cannot decode image");
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  RgbImage out{rgb.cols, rgb.rows, {}};
  out.pixels.resize(static_cast<std::size_t>(rgb.cols) * rgb.rows * 3);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* row = rgb.ptr<std::uint8_t>(y);
    std::copy(row, row + rgb.cols * 3, out.pixels.begin() + static_cast<std::ptrdiff_t>(y) * rgb.cols * 3);
  }
  return out;
}

std::vector<double> baseline_embed(const RgbImage& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
    throw Error(ErrorCode::kUndecodableImage, "RGB buffer does not match its dimensions");
  }
  cv::Mat src(image.height, image.width, CV_8UC3, const_cast<std::uint8_t*>(image.pixels.data()));
  cv::Mat small;
  // INTER_AREA averages pixel blocks when shrinking; tiny crops are upsampled.
  cv::resize(src, small, cv::Size(kEmbedSide, kEmbedSide), 0, 0,
             image.width >= kEmbedSide && image.height >= kEmbedSide ? cv::INTER_AREA : cv::INTER_LINEAR);
  std::vector<double> feature;
  feature.reserve(kEmbedLength);
  for (int y = 0; y < kEmbedSide; ++y) {
    const auto* row = small.ptr<std::uint8_t>(y);
    for (int x = 0; x < kEmbedSide * 3; ++x) feature.push_back(row[x] / 255.0);
  }
  return feature;
}

std::vector<double> baseline_embed(std::span<const std::uint8_t> encoded) {
  return baseline_embed(decode_image(encoded));
}

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  cv::Mat rgb(image.height, image.width, CV_8UC3, const_cast<std::uint8_t*>(image.pixels.data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  std::vector<std::uint8_t> out;
  if (!cv::imencode(".png", bgr, out)) throw Error(ErrorCode::kInternal, "PNG encoding failed");
  return out;
}

}  // namespace runlabel
