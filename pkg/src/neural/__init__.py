from .errors import NetworkError, ShapeError, StateError, ConfigurationError
from .errors import TrainingError, SerializationError
from .autodiff import Tensor, parameter, constant, mse_loss
from .layers import LayerSpec, KINDS
from .network import NetworkSpec, Network, forward, backward, grad_check
from .builders import build_mlp, build_cnn7, build_resnet1d
from .builders import CNN7_CHANNELS, RESNET_CHANNELS, MLP_HIDDEN
from .training import TrainOptions, TrainedNetwork, Normalization
from .training import train_network, predict_network
from .serialize import save_network, load_network
from .serialize import write_loss_curve
