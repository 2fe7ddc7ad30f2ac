// Copyright 2026 The groundmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "groundmem/io/png_io.h"

#include <png.h>

#include <cstring>
#include <vector>

#include "groundmem/error.h"

namespace groundmem {

BinaryMask ReadMaskPng(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (!png_image_begin_read_from_file(&image, name.c_str())) {
    throw FormatError(name, "png", image.message[0] ? image.message : "cannot decode");
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw FormatError(name, "png", msg);
  }
  BinaryMask mask(static_cast<int>(image.width), static_cast<int>(image.height));
  auto& data = mask.mutable_data();
  for (size_t i = 0; i < data.size(); ++i) data[i] = buffer[i] != 0 ? 1 : 0;
  return mask;
}

void WriteMaskPng(const BinaryMask& mask, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(mask.width());
  image.height = static_cast<png_uint_32>(mask.height());
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(mask.data().size());
  for (size_t i = 0; i < buffer.size(); ++i) buffer[i] = mask.data()[i] ? 255 : 0;
  const std::string name = path.string();
  if (!png_image_write_to_file(&image, name.c_str(), 0, buffer.data(), 0, nullptr)) {
    throw FormatError(name, "png", image.message[0] ? image.message : "cannot encode");
  }
}

}  // namespace groundmem
