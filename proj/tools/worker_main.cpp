// Copyright 2026 The VPE Authors
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

#include <iostream>

#include "CLI11.hpp"
#include "vpe/error.hpp"
#include "vpe/remote.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kernel worker serving the binary invoke protocol"};
  std::string listen;
  std::uint32_t max_payload = vpe::wire::kDefaultMaxPayload;
  std::vector<std::string> kernels;
  app.add_option("--listen", listen, "host:port to bind (port 0 picks one)")->required();
  app.add_option("--max-payload", max_payload, "Frame payload limit in bytes")
      ->capture_default_str();
  app.add_option("--kernels", kernels, "Serve only these kernels")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    const vpe::net::Endpoint ep = vpe::net::parse_endpoint(listen);
    vpe::remote::Worker worker(ep, vpe::remote::builtin_kernel_table(kernels), max_payload);
    std::cout << "vpe-worker listening on " << ep.host << ":" << worker.port() << std::endl;
    worker.serve();
  } catch (const std::exception& e) {
    std::cerr << "vpe-worker: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
