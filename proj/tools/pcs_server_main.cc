// Copyright 2026 The PCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pcs-server: HTTP API for spectra, consumed by the web UI.

#include <csignal>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "pcs/error.h"
#include "pcs/http_service.h"
#include "pcs/patentsview_client.h"
#include "pcs/pipeline.h"

namespace {

pcs::HttpServer* g_server = nullptr;

void OnSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serve patent citation spectra over HTTP"};
  std::string config_file;
  std::string fixture_dir = PCS_DEFAULT_FIXTURE_DIR;
  std::string bind;
  int port = -1;
  std::string static_dir;
  app.add_option("--config", config_file, "JSON client configuration file")
      ->envname("PCS_CONFIG");
  app.add_option("--fixture-dir", fixture_dir, "Directory holding fixtures")
      ->envname("PCS_FIXTURE_DIR");
  app.add_option("--bind", bind, "Listen address (env PCS_BIND)");
  app.add_option("--port", port, "Listen port, 0 for any (env PCS_PORT)");
  app.add_option("--static-dir", static_dir,
                 "Built web UI bundle (env PCS_STATIC_DIR)");
  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    pcs::ClientConfig client_config;
    if (!config_file.empty()) client_config = pcs::LoadClientConfig(config_file);
    pcs::ApplyEnvironment(client_config);
    auto client = std::make_shared<pcs::PatentsViewClient>(
        client_config,
        std::make_shared<pcs::HttplibTransport>(client_config.timeout));
    client->set_warning_sink([](std::string const& msg) {
      std::cerr << "pcs-server: warning: " << msg << "\n";
    });
    auto pipeline = std::make_shared<pcs::Pipeline>(client, fixture_dir);

    pcs::ServiceConfig config;
    pcs::ApplyServiceEnvironment(config);
    if (app.count("--bind")) config.bind_address = bind;
    if (app.count("--port")) config.port = port;
    if (app.count("--static-dir")) config.static_dir = static_dir;

    auto service = std::make_shared<pcs::SpectrumService>(config, pipeline);
    pcs::HttpServer server(service);
    int const bound = server.Bind();
    if (bound < 0) {
      std::cerr << "pcs-server: cannot bind " << config.bind_address << ":"
                << config.port << "\n";
      return static_cast<int>(pcs::ErrorCode::kIoError);
    }
    std::cerr << "pcs-server: listening on http://" << config.bind_address << ":"
              << bound << "\n";
    g_server = &server;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    server.ListenAfterBind();
    g_server = nullptr;
    return 0;
  } catch (pcs::Error const& e) {
    std::cerr << "pcs-server: " << e.name() << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  }
}
