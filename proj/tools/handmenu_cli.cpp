// handmenu: run the gesture menu pipeline, validate configs, benchmark.

#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "handmenu/bench.hpp"
#include "handmenu/config.hpp"
#include "handmenu/error.hpp"
#include "handmenu/framesource.hpp"
#include "handmenu/log.hpp"
#include "handmenu/mock_player.hpp"
#include "handmenu/pipeline.hpp"
#include "handmenu/state_server.hpp"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

handmenu::FrameSize parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--size", "expected WxH, e.g. 640x480");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--size", "expected WxH, e.g. 640x480");
  }
}

int cmd_run(const std::string& config_path, const std::string& source_spec, bool headless,
            const std::string& dump_dir, const std::string& listen, double dir_fps) {
  using namespace handmenu;
  PipelineConfig config = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
  if (!listen.empty()) {
    config.listen_address = listen;
    config.validate();
  }
  auto source = open_source(source_spec, dir_fps);

  std::vector<FrameSink*> sinks;
  std::unique_ptr<FrameDumpSink> dump;
  if (!dump_dir.empty()) {
    dump = std::make_unique<FrameDumpSink>(dump_dir);
    sinks.push_back(dump.get());
  }

  RunOptions options;
  options.channel = std::make_shared<ConfigChannel>(config);
  options.stop = &g_stop;
  std::unique_ptr<StateServer> server;
  if (!headless && !config.listen_address.empty()) {
    server = serve_state(config.listen_address, options.channel);
    sinks.push_back(server.get());
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const RunReport report = run_pipeline(config, *source, sinks, options);
  if (server) server->stop();

  log::info("processed " + std::to_string(report.frames) + " frames, " + std::to_string(report.selections.size()) +
            " selections, " + std::to_string(report.commands.size()) + " commands");
  return report.exit_status;
}

int cmd_check_config(const std::string& path) {
  const auto config = handmenu::PipelineConfig::load(path);
  std::cout << config.to_json().dump(2) << "\n";
  return 0;
}

int cmd_bench(std::size_t frames, const std::string& size_text) {
  const auto size = parse_size(size_text);
  const auto report = handmenu::run_bench(frames, size);
  std::cout << handmenu::format_bench_table(report);
  return 0;
}

int cmd_mock_player(const std::string& socket_path, bool drop_replies) {
  handmenu::MockPlayerOptions options;
  options.drop_replies = drop_replies;
  handmenu::MockPlayer player(socket_path, options);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "[info] mock player listening on " << socket_path << "\n";
  std::size_t shown = 0;
  while (!g_stop.load()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    const auto entries = player.entries();
    for (; shown < entries.size(); ++shown) {
      const auto& e = entries[shown];
      std::cout << e.received_at_ms << " "
                << (e.action ? std::string(handmenu::action_name(*e.action)) : "<violation: " + e.raw + ">")
                << std::endl;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gesture-driven virtual menu for media player control"};
  app.require_subcommand(1);

  std::string config_path, source_spec, dump_dir, listen;
  bool headless = false;
  double dir_fps = 30.0;
  auto* run = app.add_subcommand("run", "Process a frame source and drive the player");
  run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--source", source_spec, "synthetic:<script.json> | dir:<path> | camera:<id>")->required();
  run->add_flag("--headless", headless, "Do not start the WebSocket server");
  run->add_option("--dump-frames", dump_dir, "Write overlay frames as frame_%06d.ppm into this directory");
  run->add_option("--listen", listen, "WebSocket listen address host:port (overrides config)");
  run->add_option("--dir-fps", dir_fps, "Frame rate assigned to dir: sources")->check(CLI::Range(0.001, 1000.0));

  std::string check_path;
  auto* check = app.add_subcommand("check-config", "Validate a config file and print it normalized");
  check->add_option("file", check_path, "JSON config file")->required();

  std::size_t bench_frames = 300;
  std::string bench_size = "640x480";
  auto* bench = app.add_subcommand("bench", "Print per-stage latency percentiles");
  bench->add_option("--frames", bench_frames, "Number of frames")->check(CLI::PositiveNumber);
  bench->add_option("--size", bench_size, "Frame size WxH");

  std::string mock_socket;
  bool mock_drop = false;
  auto* mock = app.add_subcommand("mock-player", "Listen on a local socket and print received commands");
  mock->add_option("--socket", mock_socket, "Socket path")->required();
  mock->add_flag("--drop-replies", mock_drop, "Never acknowledge commands");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, source_spec, headless, dump_dir, listen, dir_fps);
    if (*check) return cmd_check_config(check_path);
    if (*bench) return cmd_bench(bench_frames, bench_size);
    if (*mock) return cmd_mock_player(mock_socket, mock_drop);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const handmenu::ConfigError& e) {
    std::cerr << "[error] " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "[error] " << e.what() << "\n";
    return 1;
  }
  return 0;
}
