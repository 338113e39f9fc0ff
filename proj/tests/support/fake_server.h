#ifndef DETBENCH_TESTS_FAKE_SERVER_H_
#define DETBENCH_TESTS_FAKE_SERVER_H_

// A scripted local HTTP endpoint for adapter tests.

#include <httplib.h>

#include <functional>
#include <string>
#include <thread>

namespace detbench::testing {

class FakeServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit FakeServer(Handler handler) {
    server_.Post(".*", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  FakeServer(const FakeServer&) = delete;
  FakeServer& operator=(const FakeServer&) = delete;

  std::string url(const std::string& path = "/score") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace detbench::testing

#endif  // DETBENCH_TESTS_FAKE_SERVER_H_
