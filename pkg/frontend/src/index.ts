export { ApiClient, ApiError, FetchTransport } from "./api";
export type { HttpResponse, HttpTransport, ShotResult, FreeplayExitResult } from "./api";
export { MapProjection } from "./mapView";
export type { ScreenPoint } from "./mapView";
export { PlaybackController } from "./playback";
export type { StreamTransport, SimEventEntry } from "./playback";
export { SceneViewModel } from "./sceneViewModel";
export type { Selection } from "./sceneViewModel";
export { KeyboardState, FreeplayController, KEY_AXES, exitFreeplay } from "./freeplay";
export { projectPoint, viewportScene, inFrame } from "./viewport";
export type { ViewportMarker, ViewportPoint, ViewportScene } from "./viewport";
export type * from "./types";
