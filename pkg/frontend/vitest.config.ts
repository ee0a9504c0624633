import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globals: true,
    environment: "happy-dom",
    // the end-to-end suite boots the Python service and walks a full session
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
